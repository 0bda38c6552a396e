#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hardscope/common.hpp"

namespace hardscope {

/// Immutable numeric feature table with binary labels.
///
/// Construction enforces n >= 2, m >= 1, finite features and labels in {0, 1}.
/// Operations that need both classes check that at their own boundary.
class Dataset {
public:
    Dataset(Matrix features, std::vector<Label> labels, std::vector<std::string> feature_names = {},
            std::string id = {});

    Index size() const noexcept { return features_.rows(); }
    Index num_features() const noexcept { return features_.cols(); }

    const Matrix& features() const noexcept { return features_; }
    const std::vector<Label>& labels() const noexcept { return labels_; }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }
    const std::string& id() const noexcept { return id_; }

    Label label(Index i) const noexcept { return labels_[i]; }
    std::span<const double> row(Index i) const noexcept { return features_.row(i); }

    /// Instance counts indexed by label.
    std::array<Index, 2> class_counts() const noexcept;
    Index class_count(Label c) const noexcept { return class_counts()[c]; }
    bool has_both_classes() const noexcept;

    /// Label with fewer instances; ties resolve to 1.
    Label minority_label() const noexcept;

    /// Indices of instances carrying label c, ascending.
    IndexList indices_of(Label c) const;

    Dataset subset(std::span<const Index> rows) const;
    Dataset select_features(std::span<const Index> cols) const;
    Dataset with_features(Matrix features) const;
    Dataset with_id(std::string id) const;
    /// Exchanges labels 0 and 1.
    Dataset swapped_labels() const;

private:
    Matrix features_;
    std::vector<Label> labels_;
    std::vector<std::string> names_;
    std::string id_;
};

/// Throws Error naming `operation` unless both classes are present.
void require_both_classes(const Dataset& data, std::string_view operation);

/// Permutation that orders instances by (feature vector lexicographically,
/// label, original index). Used to make fold plans and training order
/// independent of the incoming row order.
IndexList canonical_order(const Dataset& data);

} // namespace hardscope
