#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctcompand/core.hpp"
#include "ctcompand/render.hpp"

namespace ctc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPartial = 2;

/// Worker cap from CT_COMPAND_THREADS; 0 or unset means hardware concurrency.
unsigned worker_count();

struct CompandOptions {
  std::vector<std::string> inputs;  // files or directories (non-recursive)
  std::optional<std::string> params_file;
  std::string output_dir = ".";
  std::optional<Mode> mode;
  std::optional<int> bit_depth;
};

/// One <stem>.macc.png and <stem>.macc.txt per input. Per-file failures are
/// reported and do not stop the batch; any failure gives kExitPartial.
int cmd_compand(const CompandOptions& opts, std::ostream& out, std::ostream& err);

struct WindowOptions {
  std::string input;
  std::optional<double> level;
  std::optional<double> width;
  std::optional<std::string> preset;
  std::string output;
  int bit_depth = 8;
};

int cmd_window(const WindowOptions& opts, std::ostream& out, std::ostream& err);

struct CompareOptions {
  std::string input;
  std::optional<std::string> params_file;
  std::string rois_file;
  std::optional<std::string> output;       // text table
  std::optional<std::string> json_output;  // machine-readable rows
  std::optional<Mode> mode;
};

/// Per-ROI metrics for the companded image and every window preset.
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);

int cmd_params_dump(const std::optional<std::string>& path, std::ostream& out, std::ostream& err);
int cmd_params_validate(const std::string& path, std::ostream& out, std::ostream& err);

/// Writes the mandible phantom as raw-float plus a matching ROI file.
int cmd_phantom(const std::string& output, const std::optional<std::string>& rois_output,
                std::size_t size, std::ostream& out, std::ostream& err);

/// "name x y w h" per line; '#' comments and blank lines ignored.
/// Throws ParamFileError naming the offending line.
std::vector<Roi> parse_rois(std::string_view text);

}  // namespace ctc::cli
