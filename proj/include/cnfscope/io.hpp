#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnfscope/features.hpp"
#include "cnfscope/fractal.hpp"
#include "cnfscope/portfolio.hpp"
#include "cnfscope/scalefree.hpp"

namespace cnfscope {

/// Fixed six-decimal rendering used by every CSV writer.
std::string format_number(double x);

std::vector<std::string> split_csv_line(const std::string &line);

/// One line of the feature table; `error` is set for instances whose
/// extraction failed.
struct FeatureRecord {
  std::string instance;
  std::optional<std::string> family;
  std::optional<FeatureVector> features;
  std::string error;
};

inline constexpr const char *kFeatureHeader =
    "instance,family,alpha,q,d,d_b,ratio,beta,beta_b,n,m,r_max";

void write_feature_csv(std::ostream &out, const std::vector<FeatureRecord> &records);

struct FeatureTable {
  FeatureMatrix matrix;
  std::vector<std::string> warnings; // ERROR rows and other skipped lines
};

/// Reads a feature table. Columns are matched by header name; `instance`
/// is required, missing feature columns default to 0. ERROR rows are skipped
/// with a warning.
FeatureTable read_feature_csv(std::istream &in);

/// `instance,<solver>...`; cells hold seconds or `TIMEOUT`.
RuntimeMatrix read_runtime_csv(std::istream &in, double timeout);
void write_runtime_csv(std::ostream &out, const RuntimeMatrix &times);

/// Reads `instance,family` pairs.
std::vector<std::pair<std::string, std::string>> read_labels_csv(std::istream &in);

/// `r,N,N_norm` rows.
void write_curve_csv(std::ostream &out, const CoverCurve &curve);
void write_histogram_csv(std::ostream &out, const OccurrenceHistogram &h);

} // namespace cnfscope
