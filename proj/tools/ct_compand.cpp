#include <CLI11.hpp>

#include <iostream>

#include "ctcompand/cli.hpp"
#include "ctcompand/kernels.hpp"

namespace {

std::optional<ctc::Mode> mode_from(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return ctc::parse_mode(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compand high-dynamic-range CT slices into a single display image"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ct_compand 0.1.0");
  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected SIMD kernel set to stderr");

  // compand
  ctc::cli::CompandOptions compand_opts;
  std::string compand_mode;
  int compand_bits = 0;
  auto* compand = app.add_subcommand("compand", "Run the companding pipeline on files or directories");
  compand->add_option("inputs", compand_opts.inputs, "DICOM or raw-float files, or directories")->required();
  compand->add_option("-p,--params", compand_opts.params_file, "Parameter file");
  compand->add_option("-o,--output-dir", compand_opts.output_dir, "Output directory")->capture_default_str();
  compand->add_option("--mode", compand_mode, "ct or natural")->check(CLI::IsMember({"ct", "natural"}));
  compand->add_option("--bit-depth", compand_bits, "Output bit depth")->check(CLI::IsMember({8, 16}));

  // window
  ctc::cli::WindowOptions window_opts;
  auto* window = app.add_subcommand("window", "Render a conventional window setting");
  window->add_option("input", window_opts.input, "DICOM or raw-float slice")->required();
  auto* preset = window->add_option("--preset", window_opts.preset, "bone, soft or lung")
                     ->check(CLI::IsMember({"bone", "soft", "lung"}));
  auto* level = window->add_option("--level", window_opts.level, "Window level, HU");
  auto* width = window->add_option("--width", window_opts.width, "Window width, HU");
  preset->excludes(level)->excludes(width);
  window->add_option("-o,--output", window_opts.output, "Output PNG")->required();
  window->add_option("--bit-depth", window_opts.bit_depth, "Output bit depth")
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();

  // compare
  ctc::cli::CompareOptions compare_opts;
  std::string compare_mode;
  auto* compare = app.add_subcommand("compare", "Contrast metrics per ROI for MACC output and window presets");
  compare->add_option("input", compare_opts.input, "DICOM or raw-float slice")->required();
  compare->add_option("-p,--params", compare_opts.params_file, "Parameter file");
  compare->add_option("-r,--rois", compare_opts.rois_file, "ROI file: 'name x y w h' per line")->required();
  compare->add_option("-o,--output", compare_opts.output, "Write the text table here instead of stdout");
  compare->add_option("--json", compare_opts.json_output, "Write machine-readable rows here");
  compare->add_option("--mode", compare_mode, "ct or natural")->check(CLI::IsMember({"ct", "natural"}));

  // params
  auto* params = app.add_subcommand("params", "Dump or validate parameter files");
  params->require_subcommand(1);
  std::optional<std::string> dump_path;
  auto* dump = params->add_subcommand("dump", "Write the default parameter set");
  dump->add_option("path", dump_path, "Destination (stdout if omitted)");
  std::string validate_path;
  auto* validate = params->add_subcommand("validate", "Check a parameter file");
  validate->add_option("path", validate_path, "Parameter file")->required();

  // phantom
  std::string phantom_out;
  std::optional<std::string> phantom_rois;
  std::size_t phantom_size = 256;
  auto* phantom = app.add_subcommand("phantom", "Write the synthetic mandible phantom (raw-float)");
  phantom->add_option("output", phantom_out, "Output raw-float file")->required();
  phantom->add_option("--rois", phantom_rois, "Also write the lesion/tooth ROI file");
  phantom->add_option("--size", phantom_size, "Side length in pixels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ctc::cli::kExitError;
  }

  if (show_kernels) std::cerr << "kernels: " << ctc::kernels::active().name << '\n';

  if (*compand) {
    compand_opts.mode = mode_from(compand_mode);
    if (compand_bits != 0) compand_opts.bit_depth = compand_bits;
    return ctc::cli::cmd_compand(compand_opts, std::cout, std::cerr);
  }
  if (*window) return ctc::cli::cmd_window(window_opts, std::cout, std::cerr);
  if (*compare) {
    compare_opts.mode = mode_from(compare_mode);
    return ctc::cli::cmd_compare(compare_opts, std::cout, std::cerr);
  }
  if (*dump) return ctc::cli::cmd_params_dump(dump_path, std::cout, std::cerr);
  if (*validate) return ctc::cli::cmd_params_validate(validate_path, std::cout, std::cerr);
  if (*phantom) return ctc::cli::cmd_phantom(phantom_out, phantom_rois, phantom_size, std::cout, std::cerr);
  return ctc::cli::kExitError;
}
