#ifndef COVAR_CSV_HPP
#define COVAR_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "covar/study.hpp"

namespace covar {

/// Full-precision decimal form of v (%.17g); round-trips to the same bits.
std::string format_double(double v);

/// study.csv: header `n,estimator,bias,sd,rmse,cp`, one row per (n, run),
/// n-major in grid order. Estimators without confidence intervals leave cp
/// empty. UTF-8, LF endings, deterministic bytes for a fixed report.
void write_study_csv(const std::string& path,
                     const std::vector<std::pair<std::string, StudyReport>>& runs);

/// rate_fit.csv: header `slope,intercept` and one data row.
void write_rate_fit_csv(const std::string& path, double slope, double intercept);

/// measures.csv: header `alpha1,alpha2,beta,measure_i,...,measure_v`.
void write_measure_csv(const std::string& path, const std::vector<MeasureGridRow>& rows);

} // namespace covar

#endif // COVAR_CSV_HPP
