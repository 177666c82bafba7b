#include "ctcompand/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "ctcompand/compand.hpp"
#include "ctcompand/ingest.hpp"
#include "ctcompand/params_io.hpp"
#include "ctcompand/phantom.hpp"
#include "ctcompand/png.hpp"

namespace ctc::cli {
namespace fs = std::filesystem;

namespace {

struct FileResult {
  std::string input;
  std::string png;
  std::string error;
};

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file()) found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

std::string metrics_block(const ContrastMetrics& m) {
  std::ostringstream s;
  s << std::setprecision(10);
  s << "rms_contrast = " << m.rms_contrast << '\n'
    << "entropy = " << m.entropy << '\n'
    << "dynamic_range = " << m.dynamic_range << '\n'
    << "edge_gradient = " << m.edge_gradient << '\n';
  return s.str();
}

FileResult process_file(const std::string& input, const CompandParams& p, const std::string& hash,
                        const fs::path& output_dir) {
  FileResult r{input, {}, {}};
  try {
    const HuSlice slice = load_slice(input);
    const CompandResult result = compand_detailed(slice, p);
    const std::string stem = fs::path(input).stem().string();
    const fs::path png_path = output_dir / (stem + ".macc.png");
    write_png(png_path, result.image);

    std::ostringstream report;
    report << "# ct_compand report (contrast metrics are non-clinical)\n"
           << "source = " << fs::path(input).filename().string() << '\n'
           << "param_hash = " << hash << '\n'
           << "mode = " << to_string(p.mode) << '\n'
           << "width = " << result.image.width << '\n'
           << "height = " << result.image.height << '\n'
           << "bit_depth = " << result.image.bit_depth << '\n'
           << "teeth_level = " << result.teeth_level << '\n'
           << "degenerate = " << (result.degenerate ? "true" : "false") << '\n'
           << metrics_block(contrast_metrics(result.image, full_roi(result.image)));
    const std::string text = report.str();
    write_file(output_dir / (stem + ".macc.txt"),
               {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    r.png = png_path.string();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

CompandParams resolve_params(const std::optional<std::string>& file, const std::optional<Mode>& mode,
                             const std::optional<int>& bit_depth) {
  CompandParams p = file ? load_params(*file) : CompandParams{};
  if (mode) p.mode = *mode;
  if (bit_depth) p.bit_depth = *bit_depth;
  require_valid(p);
  return p;
}

std::string text_of(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

}  // namespace

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CT_COMPAND_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return hw;
  if (v == 0) return hw;
  return static_cast<unsigned>(v);
}

int cmd_compand(const CompandOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.inputs.empty()) {
    err << "compand: no inputs given\n";
    return kExitError;
  }
  const auto files = expand_inputs(opts.inputs);
  std::error_code ec;
  fs::create_directories(opts.output_dir, ec);
  if (ec) {
    err << "compand: cannot create output directory " << opts.output_dir << ": " << ec.message() << '\n';
    return kExitError;
  }

  std::vector<FileResult> results(files.size());
  std::optional<CompandParams> params;
  std::string params_error;
  try {
    params = resolve_params(opts.params_file, opts.mode, opts.bit_depth);
  } catch (const std::exception& e) {
    params_error = std::string("invalid parameters: ") + e.what();
  }

  if (!params) {
    for (std::size_t i = 0; i < files.size(); ++i) results[i] = {files[i], {}, params_error};
  } else {
    const std::string hash = param_hash(*params);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(files.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < files.size(); i = next++) {
        results[i] = process_file(files[i], *params, hash, opts.output_dir);
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }
  }

  std::size_t failures = 0;
  for (const auto& r : results) {
    if (r.error.empty()) {
      out << "ok     " << r.input << " -> " << r.png << '\n';
    } else {
      ++failures;
      err << "error  " << r.input << ": " << r.error << '\n';
    }
  }
  out << files.size() - failures << " of " << files.size() << " file(s) companded\n";
  return failures == 0 ? kExitOk : kExitPartial;
}

int cmd_window(const WindowOptions& opts, std::ostream& out, std::ostream& err) {
  const bool explicit_window = opts.level.has_value() || opts.width.has_value();
  if (opts.preset && explicit_window) {
    err << "window: use either --preset or --level/--width, not both\n";
    return kExitError;
  }
  WindowSpec window;
  if (opts.preset) {
    auto preset = find_preset(*opts.preset);
    if (!preset) {
      err << "window: unknown preset '" << *opts.preset << "' (bone, soft, lung)\n";
      return kExitError;
    }
    window = *preset;
  } else {
    if (!opts.level || !opts.width) {
      err << "window: need --preset or both --level and --width\n";
      return kExitError;
    }
    window = {*opts.level, *opts.width, "custom"};
  }
  if (!(window.width > 0.0)) {
    err << "window: width must be > 0\n";
    return kExitError;
  }
  try {
    const HuSlice slice = load_slice(opts.input);
    write_png(opts.output, window_render(slice, window, opts.bit_depth));
  } catch (const std::exception& e) {
    err << "window: " << e.what() << '\n';
    return kExitError;
  }
  out << "wrote " << opts.output << " (level " << window.level << ", width " << window.width << ")\n";
  return kExitOk;
}

std::vector<Roi> parse_rois(std::string_view text) {
  std::vector<Roi> rois;
  std::vector<std::string> problems;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string line(text.substr(0, newline));
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    std::istringstream in(line);
    std::string name;
    if (!(in >> name)) continue;
    long long x = 0, y = 0, w = 0, h = 0;
    std::string extra;
    if (!(in >> x >> y >> w >> h) || (in >> extra) || x < 0 || y < 0 || w < 0 || h < 0) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'name x y w h' with non-negative integers");
      continue;
    }
    rois.push_back({name, static_cast<std::size_t>(x), static_cast<std::size_t>(y),
                    static_cast<std::size_t>(w), static_cast<std::size_t>(h)});
  }
  if (!problems.empty()) throw ParamFileError(std::move(problems));
  return rois;
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<Roi> rois;
  CompandParams params;
  HuSlice slice;
  try {
    rois = parse_rois(text_of(opts.rois_file));
    params = resolve_params(opts.params_file, opts.mode, std::nullopt);
    slice = load_slice(opts.input);
  } catch (const std::exception& e) {
    err << "compare: " << e.what() << '\n';
    return kExitError;
  }

  std::vector<std::pair<std::string, LdrImage>> sources;
  try {
    sources.emplace_back("macc", compand(slice, params));
  } catch (const std::exception& e) {
    err << "compare: " << e.what() << '\n';
    return kExitError;
  }
  for (const auto& w : window_presets()) {
    sources.emplace_back(w.name, window_render(slice, w, params.bit_depth));
  }

  std::ostringstream table;
  table << std::left << std::setw(14) << "roi" << std::setw(8) << "source" << std::right
        << std::setw(14) << "rms_contrast" << std::setw(10) << "entropy" << std::setw(15)
        << "dynamic_range" << std::setw(15) << "edge_gradient" << '\n';
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& roi : rois) {
    for (const auto& [name, image] : sources) {
      try {
        const ContrastMetrics m = contrast_metrics(image, roi);
        table << std::left << std::setw(14) << roi.name << std::setw(8) << name << std::right
              << std::fixed << std::setprecision(6) << std::setw(14) << m.rms_contrast
              << std::setw(10) << std::setprecision(4) << m.entropy << std::setw(15)
              << std::setprecision(1) << m.dynamic_range << std::setw(15) << std::setprecision(4)
              << m.edge_gradient << '\n';
        rows.push_back({{"roi", roi.name},
                        {"source", name},
                        {"rms_contrast", m.rms_contrast},
                        {"entropy", m.entropy},
                        {"dynamic_range", m.dynamic_range},
                        {"edge_gradient", m.edge_gradient}});
      } catch (const std::exception& e) {
        table << std::left << std::setw(14) << roi.name << std::setw(8) << name
              << "error: " << e.what() << '\n';
        rows.push_back({{"roi", roi.name}, {"source", name}, {"error", e.what()}});
      }
    }
  }

  const nlohmann::json doc = {{"input", fs::path(opts.input).filename().string()},
                              {"param_hash", param_hash(params)},
                              {"bit_depth", params.bit_depth},
                              {"rows", rows}};
  try {
    if (opts.output) {
      const std::string text = table.str();
      write_file(*opts.output, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    } else {
      out << table.str();
    }
    if (opts.json_output) {
      const std::string text = doc.dump(2) + "\n";
      write_file(*opts.json_output, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    }
  } catch (const std::exception& e) {
    err << "compare: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

int cmd_params_dump(const std::optional<std::string>& path, std::ostream& out, std::ostream& err) {
  const std::string text = dump_params(CompandParams{});
  if (!path) {
    out << text;
    return kExitOk;
  }
  try {
    write_file(*path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  } catch (const std::exception& e) {
    err << "params: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

int cmd_params_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  CompandParams p;
  try {
    p = load_params(path);
  } catch (const std::exception& e) {
    err << path << ":\n" << e.what() << '\n';
    return kExitError;
  }
  const auto problems = validate_params(p);
  if (!problems.empty()) {
    for (const auto& msg : problems) err << path << ": " << msg << '\n';
    return kExitError;
  }
  out << path << ": ok (hash " << param_hash(p) << ")\n";
  return kExitOk;
}

int cmd_phantom(const std::string& output, const std::optional<std::string>& rois_output,
                std::size_t size, std::ostream& out, std::ostream& err) {
  try {
    const MandiblePhantom ph = make_mandible_phantom(size);
    save_raw_float(output, ph.slice.values);
    if (rois_output) {
      std::ostringstream text;
      text << "# name x y w h\n";
      for (const auto& r : ph.rois()) {
        text << r.name << ' ' << r.x << ' ' << r.y << ' ' << r.width << ' ' << r.height << '\n';
      }
      const std::string s = text.str();
      write_file(*rois_output, {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
    }
  } catch (const std::exception& e) {
    err << "phantom: " << e.what() << '\n';
    return kExitError;
  }
  out << "wrote " << output << '\n';
  return kExitOk;
}

}  // namespace ctc::cli
