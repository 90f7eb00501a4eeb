#include "covar/csv.hpp"

#include <cstdio>
#include <fstream>
#include <map>

#include "covar/errors.hpp"

namespace covar {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace

void write_study_csv(const std::string& path,
                     const std::vector<std::pair<std::string, StudyReport>>& runs) {
    auto out = open_out(path);
    out << "n,estimator,bias,sd,rmse,cp\n";

    // n-major ordering; runs keep their given order within each n.
    std::map<std::size_t, bool> all_n;
    for (const auto& [label, report] : runs) {
        for (const auto& row : report.rows) all_n[row.n] = true;
    }
    for (const auto& [n, unused] : all_n) {
        (void)unused;
        for (const auto& [label, report] : runs) {
            for (const auto& row : report.rows) {
                if (row.n != n) continue;
                out << n << ',' << label << ',' << format_double(row.bias) << ','
                    << format_double(row.sd) << ',' << format_double(row.rmse) << ',';
                if (row.cp) out << format_double(*row.cp);
                out << '\n';
            }
        }
    }
    finish(out, path);
}

void write_rate_fit_csv(const std::string& path, double slope, double intercept) {
    auto out = open_out(path);
    out << "slope,intercept\n"
        << format_double(slope) << ',' << format_double(intercept) << '\n';
    finish(out, path);
}

void write_measure_csv(const std::string& path, const std::vector<MeasureGridRow>& rows) {
    auto out = open_out(path);
    out << "alpha1,alpha2,beta,measure_i,measure_ii,measure_iii,measure_iv,measure_v\n";
    for (const auto& row : rows) {
        out << format_double(row.at.alpha1) << ',' << format_double(row.at.alpha2) << ','
            << format_double(row.at.beta);
        for (double v : row.measures) out << ',' << format_double(v);
        out << '\n';
    }
    finish(out, path);
}

} // namespace covar
