#include "evtwin/decision_tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "evtwin/errors.hpp"

namespace evtwin {

namespace {

constexpr std::array<std::string_view, kBuildingTypeCount> kTypeLabels{
    "single-family", "two-family", "apartment-tower"};

using Counts = std::array<int, kBuildingTypeCount>;

BuildingType majority(const Counts& counts) {
    // ties go to the lower class index
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[best]) best = c;
    }
    return static_cast<BuildingType>(best);
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = 0.0;
};

class Trainer {
public:
    Trainer(std::span<const LabeledBuildingExample> examples, const TreeParams& params)
        : params_(params) {
        x_.reserve(examples.size());
        y_.reserve(examples.size());
        for (const auto& e : examples) {
            x_.push_back(features_of(e));
            y_.push_back(static_cast<std::size_t>(e.label));
        }
    }

    std::vector<DecisionTree::Node> run() {
        std::vector<std::size_t> all(x_.size());
        std::iota(all.begin(), all.end(), 0);
        grow(all, 0);
        return std::move(nodes_);
    }

private:
    Counts count(const std::vector<std::size_t>& idx) const {
        Counts c{};
        for (auto i : idx) ++c[y_[i]];
        return c;
    }

    SplitChoice best_split(const std::vector<std::size_t>& idx, const Counts& total) const {
        SplitChoice best;
        const auto n = static_cast<double>(idx.size());
        std::vector<std::size_t> order = idx;
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return x_[a][f] < x_[b][f];
            });
            Counts left{};
            for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                ++left[y_[order[k]]];
                const double v = x_[order[k]][f];
                const double next = x_[order[k + 1]][f];
                if (!(v < next)) continue;
                const auto n_left = static_cast<int>(k + 1);
                const auto n_right = static_cast<int>(order.size()) - n_left;
                if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
                Counts right{};
                for (std::size_t c = 0; c < right.size(); ++c) right[c] = total[c] - left[c];
                const double impurity = (n_left * gini_impurity(left) + n_right * gini_impurity(right)) / n;
                if (!best.found || impurity < best.impurity) {
                    best = {true, f, 0.5 * (v + next), impurity};
                }
            }
        }
        return best;
    }

    int grow(const std::vector<std::size_t>& idx, int depth) {
        const Counts counts = count(idx);
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        {
            auto& node = nodes_.back();
            node.depth = depth;
            node.class_counts = counts;
            node.label = majority(counts);
        }
        const double parent = gini_impurity(counts);
        const bool splittable = parent > 0.0 && depth < params_.max_depth &&
                                static_cast<int>(idx.size()) >= 2 * params_.min_leaf;
        if (!splittable) return id;
        const SplitChoice split = best_split(idx, counts);
        if (!split.found || !(split.impurity < parent - 1e-12)) return id;

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (auto i : idx) {
            (x_[i][split.feature] <= split.threshold ? left : right).push_back(i);
        }
        const int l = grow(left, depth + 1);
        const int r = grow(right, depth + 1);
        auto& node = nodes_[static_cast<std::size_t>(id)];
        node.is_leaf = false;
        node.feature = static_cast<Feature>(split.feature);
        node.threshold = split.threshold;
        node.left = l;
        node.right = r;
        return id;
    }

    TreeParams params_;
    std::vector<FeatureVector> x_;
    std::vector<std::size_t> y_;
    std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

std::string_view to_string(BuildingType t) { return kTypeLabels[static_cast<std::size_t>(t)]; }

BuildingType parse_building_type(std::string_view label) {
    for (std::size_t i = 0; i < kTypeLabels.size(); ++i) {
        if (kTypeLabels[i] == label) return static_cast<BuildingType>(i);
    }
    throw ValidationError("unknown building type '" + std::string(label) + "'");
}

FeatureVector features_of(const LabeledBuildingExample& e) {
    return {static_cast<double>(e.meter_count), e.volume_m3,
            (e.has_pv || e.has_heat_pump) ? 1.0 : 0.0};
}

FeatureVector features_of(const Building& b) {
    return {static_cast<double>(b.meter_count), b.volume_m3,
            (b.has_pv || b.has_heat_pump) ? 1.0 : 0.0};
}

double gini_impurity(const Counts& counts) {
    const int n = std::accumulate(counts.begin(), counts.end(), 0);
    if (n == 0) return 0.0;
    double g = 1.0;
    for (int c : counts) {
        const double p = static_cast<double>(c) / n;
        g -= p * p;
    }
    return g;
}

DecisionTree::DecisionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw TrainingError("decision tree has no nodes");
}

std::size_t DecisionTree::leaf_index(const FeatureVector& x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf) {
        const auto& n = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                           : n.right);
    }
    return i;
}

BuildingType DecisionTree::predict(const FeatureVector& x) const {
    return nodes_[leaf_index(x)].label;
}

int DecisionTree::depth() const {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
}

DecisionTree train_tree(std::span<const LabeledBuildingExample> examples, const TreeParams& params) {
    if (examples.empty()) throw TrainingError("cannot train a decision tree on an empty training set");
    if (params.max_depth < 0 || params.min_leaf < 1) {
        throw TrainingError("decision tree needs max_depth >= 0 and min_leaf >= 1");
    }
    return DecisionTree(Trainer(examples, params).run());
}

double training_accuracy(const DecisionTree& tree,
                         std::span<const LabeledBuildingExample> examples) {
    if (examples.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& e : examples) {
        if (tree.predict(features_of(e)) == e.label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(examples.size());
}

BuildingType classify_building(const DecisionTree& tree, const Building& b) {
    return tree.predict(features_of(b));
}

BuildingType classify_by_meter_rule(const Building& b) {
    if (b.meter_count <= 1) return BuildingType::single_family;
    if (b.meter_count == 2) return BuildingType::two_family;
    return BuildingType::apartment_tower;
}

}  // namespace evtwin
