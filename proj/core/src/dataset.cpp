#include "hardscope/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hardscope {

Dataset::Dataset(Matrix features, std::vector<Label> labels, std::vector<std::string> feature_names,
                 std::string id)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      names_(std::move(feature_names)),
      id_(std::move(id)) {
    if (features_.rows() < 2) throw Error("dataset: need at least 2 instances");
    if (features_.cols() < 1) throw Error("dataset: need at least 1 feature");
    if (labels_.size() != features_.rows()) {
        throw Error("dataset: " + std::to_string(labels_.size()) + " labels for " +
                    std::to_string(features_.rows()) + " rows");
    }
    for (Index i = 0; i < labels_.size(); ++i) {
        if (labels_[i] != 0 && labels_[i] != 1) {
            throw Error("dataset: label at row " + std::to_string(i) + " is not 0/1");
        }
    }
    for (double v : features_.values()) {
        if (!std::isfinite(v)) throw Error("dataset: non-finite feature value");
    }
    if (names_.empty()) {
        names_.reserve(features_.cols());
        for (Index j = 0; j < features_.cols(); ++j) names_.push_back("f" + std::to_string(j));
    }
    if (names_.size() != features_.cols()) throw Error("dataset: feature name count mismatch");
}

std::array<Index, 2> Dataset::class_counts() const noexcept {
    std::array<Index, 2> counts{0, 0};
    for (Label y : labels_) ++counts[static_cast<std::size_t>(y)];
    return counts;
}

bool Dataset::has_both_classes() const noexcept {
    const auto counts = class_counts();
    return counts[0] > 0 && counts[1] > 0;
}

Label Dataset::minority_label() const noexcept {
    const auto counts = class_counts();
    return counts[0] < counts[1] ? 0 : 1;
}

IndexList Dataset::indices_of(Label c) const {
    IndexList out;
    for (Index i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == c) out.push_back(i);
    }
    return out;
}

Dataset Dataset::subset(std::span<const Index> rows) const {
    std::vector<Label> labels(rows.size());
    for (Index i = 0; i < rows.size(); ++i) labels[i] = labels_.at(rows[i]);
    return Dataset(features_.select_rows(rows), std::move(labels), names_, id_);
}

Dataset Dataset::select_features(std::span<const Index> cols) const {
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (Index c : cols) names.push_back(names_.at(c));
    return Dataset(features_.select_cols(cols), labels_, std::move(names), id_);
}

Dataset Dataset::with_features(Matrix features) const {
    if (features.cols() != features_.cols()) return Dataset(std::move(features), labels_, {}, id_);
    return Dataset(std::move(features), labels_, names_, id_);
}

Dataset Dataset::with_id(std::string id) const {
    return Dataset(features_, labels_, names_, std::move(id));
}

Dataset Dataset::swapped_labels() const {
    std::vector<Label> labels(labels_.size());
    std::transform(labels_.begin(), labels_.end(), labels.begin(), [](Label y) { return 1 - y; });
    return Dataset(features_, std::move(labels), names_, id_);
}

void require_both_classes(const Dataset& data, std::string_view operation) {
    if (!data.has_both_classes()) {
        throw Error(std::string(operation) + ": both classes must be present");
    }
}

IndexList canonical_order(const Dataset& data) {
    IndexList order(data.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const auto ra = data.row(a);
        const auto rb = data.row(b);
        if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
        if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
        if (data.label(a) != data.label(b)) return data.label(a) < data.label(b);
        return a < b;
    });
    return order;
}

} // namespace hardscope
