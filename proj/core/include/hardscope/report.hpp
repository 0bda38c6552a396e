#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardscope/adaptive.hpp"
#include "hardscope/cluster.hpp"
#include "hardscope/complexity.hpp"
#include "hardscope/ensemble.hpp"
#include "hardscope/hardness.hpp"
#include "hardscope/histogram.hpp"
#include "hardscope/io.hpp"
#include "hardscope/stats.hpp"

namespace hardscope {

/// Version stamped into every top-level JSON document as "schema_version".
inline constexpr int schema_version = 1;

/// Finite values as numbers; inf/-inf/nan as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);

/// Flat object keyed by measure acronym (computed measures only).
nlohmann::json to_json(const ComplexityProfile& profile);
nlohmann::json to_json(const CorrelationResult& result);
nlohmann::json to_json(const CorrelationMatrix& matrix);
nlohmann::json to_json(const HardnessHistogram& histogram);
nlohmann::json to_json(const HistogramBundle& bundle);
nlohmann::json to_json(const PreprocessPlan& plan);
nlohmann::json to_json(const WilcoxonResult& result);

/// {"schema_version", "kind": "hardness_report", "dataset", "dsh", "learners",
///  "warnings", "instances": [{"index", "label", "ih", "measures", "ih_by_learner"}]}
nlohmann::json hardness_report_json(const HardnessReport& report, const std::string& dataset_id = {});

/// One row per instance: index, label, ih, the 15 measures (when present),
/// then ih_<learner> columns.
void write_hardness_csv(std::ostream& out, const HardnessReport& report);

/// Header "dataset,F1,...,C2" then one row per profile.
void write_complexity_csv(std::ostream& out, const std::vector<std::pair<std::string, ComplexityProfile>>& rows);

void write_histogram_csv(std::ostream& out, const HistogramBundle& bundle);

/// Rows "a,b,rho,p_value,strength,significant,degenerate" for every cell (i < j).
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix);

/// COD between pool members, pooling every (dataset, repeat, instance)
/// prediction both members produced.
CodMatrix pool_cod(const std::vector<PoolPredictions>& runs);

struct BatchOptions {
    std::uint64_t seed = 42;
    Index repeats = 5;
    Index folds = 5;
    std::vector<LearnerSpec> pool = default_pool(42);
    BaselinePipeline pipeline{};
    MeasureOptions measures{};
    unsigned threads = 0;
};

struct BatchEntry {
    std::string id;
    Index instances = 0;
    Index features = 0;
    std::array<Index, 2> class_counts{0, 0};
    ComplexityProfile profile;
    HardnessReport hardness;
    double dsh = 0.0;
    double idsh = 0.0;
    /// Spearman of each instance measure against IH, over all instances and
    /// per class (empty when the class has fewer than 3 instances).
    std::vector<std::pair<InstanceMeasure, CorrelationResult>> ih_correlations;
    std::array<std::vector<std::pair<InstanceMeasure, CorrelationResult>>, 2> ih_correlations_by_class;
};

struct BatchError {
    std::string source;
    std::string message;
};

struct BatchReport {
    std::vector<BatchEntry> entries;
    std::vector<BatchError> errors;
    /// Spearman of each complexity measure against IDSH across entries
    /// (needs at least 3 entries).
    std::vector<std::pair<ComplexityMeasure, CorrelationResult>> idsh_correlations;
};

/// A named dataset source; load() may throw, which is recorded as an error.
struct BatchInput {
    std::string name;
    std::function<Dataset()> load;
};

BatchReport batch_report(const std::vector<BatchInput>& inputs, const BatchOptions& options = {});
BatchReport batch_report(const std::vector<std::filesystem::path>& paths, const LoadOptions& load_options,
                         const BatchOptions& options = {});

/// The whole bundle (per-entry summaries, correlation tables, errors).
nlohmann::json to_json(const BatchReport& report);

/// Writes bundle.json plus <id>.complexity.csv / <id>.hardness.csv per entry
/// into `dir` (created if missing). Returns the written paths.
std::vector<std::filesystem::path> write_batch(const BatchReport& report, const std::filesystem::path& dir);

} // namespace hardscope
