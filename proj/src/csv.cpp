#include "landweber/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace landweber::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()), path_(path) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (filled_ > 0) out_ << ',';
  out_ << s;
  ++filled_;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
  if (filled_ != columns_) {
    throw std::logic_error(path_.string() + ": row has " + std::to_string(filled_) + " cells, header has " +
                           std::to_string(columns_));
  }
  out_ << '\n';
  filled_ = 0;
  if (!out_) throw std::runtime_error("write failed for " + path_.string());
}

void write_deconv_errors(const std::filesystem::path& path, const deconv::Result& result) {
  std::vector<std::string> header{"k"};
  for (const auto& l : result.labels) header.push_back("error_" + l);
  CsvWriter w(path, header);
  for (std::size_t i = 0; i < result.ks.size(); ++i) {
    w.cell(result.ks[i]);
    for (const auto& curve : result.errors) w.cell(curve[i]);
    w.end_row();
  }
}

void write_deconv_snapshots(const std::filesystem::path& path, const deconv::Result& result,
                            const deconv::GridSpec& grid, int decimate) {
  if (decimate < 1) throw std::invalid_argument("snapshot decimation must be >= 1");
  CsvWriter w(path, {"k", "x", "f", "g", "y", "s_plain", "s_cheb"});
  for (const auto& snap : result.snapshots) {
    for (int i = 0; i < grid.bins; i += decimate) {
      w.cell(snap.k)
          .cell(grid.point(i))
          .cell(result.signals.f[i].real())
          .cell(result.signals.g[i].real())
          .cell(result.y[i].real())
          .cell(snap.plain[i].real())
          .cell(snap.chebyshev[i].real());
      w.end_row();
    }
  }
}

void write_lsq_curves(const std::filesystem::path& path, const mimo::LsqResult& result,
                      const mimo::ModelCurves& model) {
  std::vector<std::string> header{"k"};
  for (const auto& l : result.labels) header.push_back("mean_sq_err_" + l);
  for (const auto& l : model.labels) header.push_back(l);
  CsvWriter w(path, header);
  for (std::size_t i = 0; i < result.ks.size(); ++i) {
    w.cell(result.ks[i]);
    for (const auto& c : result.mean_sq_err) w.cell(c[i]);
    for (const auto& c : model.values) w.cell(c[i]);
    w.end_row();
  }
}

void write_lsq_rates(const std::filesystem::path& path, const mimo::LsqResult& result) {
  std::vector<std::string> header{"trial", "omega_opt", "l_min", "l_max", "rho"};
  for (std::size_t t = 1; t <= result.mean_u.size(); ++t) header.push_back("U" + std::to_string(t));
  CsvWriter w(path, header);
  for (std::size_t i = 0; i < result.rates.size(); ++i) {
    const auto& r = result.rates[i];
    w.cell(static_cast<long long>(i)).cell(r.omega_opt).cell(r.l_min).cell(r.l_max).cell(r.rho);
    for (double u : r.u) w.cell(u);
    w.end_row();
  }
}

void write_ser_table(const std::filesystem::path& path, const std::vector<mimo::SerPoint>& points) {
  CsvWriter w(path, {"snr_db", "detector", "errors", "symbols", "ser", "trials", "diverged", "ci_low", "ci_high"});
  for (const auto& p : points) {
    const auto [lo, hi] = p.confidence_interval();
    w.cell(p.snr_db)
        .cell(p.detector)
        .cell(static_cast<long long>(p.errors))
        .cell(static_cast<long long>(p.symbols))
        .cell(p.ser())
        .cell(static_cast<long long>(p.trials))
        .cell(static_cast<long long>(p.diverged))
        .cell(lo)
        .cell(hi);
    w.end_row();
  }
}

}  // namespace landweber::io
