#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "evtwin/domain.hpp"

namespace evtwin {

enum class BuildingType { single_family, two_family, apartment_tower };
inline constexpr std::size_t kBuildingTypeCount = 3;

std::string_view to_string(BuildingType t);
BuildingType parse_building_type(std::string_view label);

struct LabeledBuildingExample {
    int meter_count = 1;
    double volume_m3 = 0.0;
    bool has_pv = false;
    bool has_heat_pump = false;
    BuildingType label = BuildingType::single_family;
};

// Classifier inputs: meter count, building volume and one flag that is set
// when the building has a PV installation or a heat pump.
enum class Feature { meter_count, volume_m3, pv_or_heat_pump };
inline constexpr std::size_t kFeatureCount = 3;
using FeatureVector = std::array<double, kFeatureCount>;

FeatureVector features_of(const LabeledBuildingExample& e);
FeatureVector features_of(const Building& b);

struct TreeParams {
    int max_depth = 6;
    int min_leaf = 1;

    bool operator==(const TreeParams&) const = default;
};

// CART classification tree stored as a flat node array, root at index 0.
// A sample goes left when feature <= threshold.
class DecisionTree {
public:
    struct Node {
        bool is_leaf = true;
        Feature feature = Feature::meter_count;
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int depth = 0;
        BuildingType label = BuildingType::single_family;
        std::array<int, kBuildingTypeCount> class_counts{};
    };

    explicit DecisionTree(std::vector<Node> nodes);

    BuildingType predict(const FeatureVector& x) const;
    // Index of the leaf reached by x.
    std::size_t leaf_index(const FeatureVector& x) const;
    const std::vector<Node>& nodes() const { return nodes_; }
    int depth() const;

private:
    std::vector<Node> nodes_;
};

// Greedy recursive partitioning minimising the weighted Gini impurity of
// the two children. Throws TrainingError on an empty training set.
DecisionTree train_tree(std::span<const LabeledBuildingExample> examples, const TreeParams& params);

double gini_impurity(const std::array<int, kBuildingTypeCount>& counts);
double training_accuracy(const DecisionTree& tree,
                         std::span<const LabeledBuildingExample> examples);

BuildingType classify_building(const DecisionTree& tree, const Building& b);

// Used when no labelled examples are available: 1 meter is a single-family
// building, 2 meters a two-family building, anything larger a tower.
BuildingType classify_by_meter_rule(const Building& b);

}  // namespace evtwin
