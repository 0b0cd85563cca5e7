#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "landweber/deconv.hpp"
#include "landweber/experiments.hpp"

namespace landweber::io {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
  std::filesystem::path path_;
};

/// error_curves.csv: k, error_plain, error_cheb_T<p>...
void write_deconv_errors(const std::filesystem::path& path, const deconv::Result& result);
/// snapshots.csv: k, x, f, g, y, s_plain, s_cheb (every `decimate`-th grid point).
void write_deconv_snapshots(const std::filesystem::path& path, const deconv::Result& result,
                            const deconv::GridSpec& grid, int decimate);
/// lsq_curves.csv: k, mean_sq_err_plain, mean_sq_err_cheb_T<p>..., model columns.
void write_lsq_curves(const std::filesystem::path& path, const mimo::LsqResult& result,
                      const mimo::ModelCurves& model);
/// lsq_rates.csv: trial, omega_opt, l_min, l_max, rho, U1..U<max>.
void write_lsq_rates(const std::filesystem::path& path, const mimo::LsqResult& result);
/// ser.csv: snr_db, detector, errors, symbols, ser, trials, diverged, ci_low, ci_high.
void write_ser_table(const std::filesystem::path& path, const std::vector<mimo::SerPoint>& points);

}  // namespace landweber::io
