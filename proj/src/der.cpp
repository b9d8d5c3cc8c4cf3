#include "evtwin/der.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evtwin/errors.hpp"

namespace evtwin {

double size_pv(double roof_area_m2, const PvParams& params) {
    return std::min(params.density_kwp_per_m2 * roof_area_m2, params.cap_kwp);
}

TimeSeries pv_series(double kwp, Orientation orientation, const PvProfileLibrary& library) {
    const auto it = library.find(orientation);
    if (it == library.end()) {
        throw LookupError("no PV profile for orientation " + std::string(to_string(orientation)));
    }
    return it->second.scaled(kwp);
}

double size_bess(double annual_demand_mwh) { return std::min(annual_demand_mwh, kBessCapKwh); }

Bess make_bess(double capacity_kwh, const BessSettings& settings) {
    const double eta = std::sqrt(settings.round_trip_efficiency);
    return {capacity_kwh, eta, eta, capacity_kwh * settings.c_rate,
            capacity_kwh * settings.initial_soc_fraction};
}

BessStep step_bess(const Bess& b, double surplus_kw) {
    BessStep out{b, 0.0};
    Bess& n = out.bess;
    if (surplus_kw > 0.0) {
        const double headroom_input = (b.capacity_kwh - b.soc_kwh) / b.charge_efficiency;
        const double p = std::max(0.0, std::min({surplus_kw, b.power_rating_kw, headroom_input}));
        n.soc_kwh = p >= headroom_input ? b.capacity_kwh : b.soc_kwh + p * b.charge_efficiency;
        out.p_bat_act_kw = p;
    } else if (surplus_kw < 0.0) {
        const double available = b.soc_kwh * b.discharge_efficiency;
        const double p = std::max(0.0, std::min({-surplus_kw, b.power_rating_kw, available}));
        n.soc_kwh = p >= available ? 0.0 : std::max(0.0, b.soc_kwh - p / b.discharge_efficiency);
        out.p_bat_act_kw = -p;
    }
    return out;
}

double self_consumed(double p_build, double p_cs, double p_pv, double p_bat_act) {
    const double production = p_pv - p_bat_act;
    if (production < 0.0) {
        throw InvariantError("local production P_PV - P_Bat_act is negative (" +
                             std::to_string(production) + " kW)");
    }
    return std::min(p_build + p_cs, production);
}

BuildingEnergyResult simulate_building(const TimeSeries& demand, const TimeSeries* cs_demand,
                                       const TimeSeries* pv, std::optional<Bess> bess) {
    if (cs_demand && !demand.aligned_with(*cs_demand)) {
        throw AlignmentError("charging-station series is not aligned with the building demand");
    }
    if (pv && !demand.aligned_with(*pv)) {
        throw AlignmentError("PV series is not aligned with the building demand");
    }
    const std::size_t n = demand.size();
    BuildingEnergyResult r;
    r.start = demand.start();
    r.p_build.assign(demand.values().begin(), demand.values().end());
    r.p_cs = cs_demand ? std::vector<double>(cs_demand->values().begin(), cs_demand->values().end())
                       : std::vector<double>(n, 0.0);
    r.p_pv = pv ? std::vector<double>(pv->values().begin(), pv->values().end())
                : std::vector<double>(n, 0.0);
    r.p_bat_act.assign(n, 0.0);
    r.p_self_cons.assign(n, 0.0);
    r.grid_import.assign(n, 0.0);
    r.feed_in.assign(n, 0.0);
    if (bess) {
        r.bess_soc.assign(n, 0.0);
        r.bess_initial_soc_kwh = bess->soc_kwh;
    }

    for (std::size_t t = 0; t < n; ++t) {
        const double load = r.p_build[t] + r.p_cs[t];
        if (bess) {
            const BessStep step = step_bess(*bess, r.p_pv[t] - load);
            *bess = step.bess;
            r.p_bat_act[t] = step.p_bat_act_kw;
            r.bess_soc[t] = bess->soc_kwh;
            if (step.p_bat_act_kw > 0.0) r.bess_charged_kwh += step.p_bat_act_kw;
            else r.bess_delivered_kwh -= step.p_bat_act_kw;
        }
        r.p_self_cons[t] = self_consumed(r.p_build[t], r.p_cs[t], r.p_pv[t], r.p_bat_act[t]);
        const double production = r.p_pv[t] - r.p_bat_act[t];
        r.grid_import[t] = std::max(0.0, load - production);
        r.feed_in[t] = std::max(0.0, production - load);
    }
    return r;
}

}  // namespace evtwin
