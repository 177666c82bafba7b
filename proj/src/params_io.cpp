#include "ctcompand/params_io.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "ctcompand/ingest.hpp"

namespace ctc {
namespace {

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  const std::string copy(text);
  char* end = nullptr;
  out = std::strtod(copy.c_str(), &end);
  return end == copy.c_str() + copy.size();
}

bool parse_int(std::string_view text, int& out) {
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_list(std::string_view text, std::vector<double>& out) {
  out.clear();
  text = trim(text);
  if (text.empty()) return true;
  for (;;) {
    const auto comma = text.find(',');
    double v = 0.0;
    if (!parse_double(text.substr(0, comma), v)) return false;
    out.push_back(v);
    if (comma == std::string_view::npos) return true;
    text.remove_prefix(comma + 1);
  }
}

struct Field {
  const char* key;
  const char* comment;
  std::function<std::string(const CompandParams&)> write;
  std::function<bool(std::string_view, CompandParams&)> read;
};

Field real(const char* key, const char* comment, double CompandParams::*member) {
  return {key, comment, [member](const CompandParams& p) { return format_double(p.*member); },
          [member](std::string_view v, CompandParams& p) { return parse_double(v, p.*member); }};
}

Field integer(const char* key, const char* comment, int CompandParams::*member) {
  return {key, comment, [member](const CompandParams& p) { return std::to_string(p.*member); },
          [member](std::string_view v, CompandParams& p) { return parse_int(v, p.*member); }};
}

Field list(const char* key, const char* comment, std::vector<double> CompandParams::*member) {
  return {key, comment, [member](const CompandParams& p) { return format_list(p.*member); },
          [member](std::string_view v, CompandParams& p) { return parse_list(v, p.*member); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"mode", "ct: full pipeline; natural: no soft-tissue enhancement, single channel",
       [](const CompandParams& p) { return std::string(to_string(p.mode)); },
       [](std::string_view v, CompandParams& p) {
         auto mode = parse_mode(std::string(trim(v)));
         if (mode) p.mode = *mode;
         return mode.has_value();
       }},
      real("hu_min_clip", "lower HU clip; also the zero of the normalized scale", &CompandParams::hu_min_clip),
      real("hu_max_clip", "upper HU clip for metal; also the one of the normalized scale", &CompandParams::hu_max_clip),
      real("soft_lo", "soft-tissue band lower bound, HU", &CompandParams::soft_lo),
      real("soft_hi", "soft-tissue band upper bound, HU", &CompandParams::soft_hi),
      real("V", "enhancement weight turnover, normalized intensity (weight < 0 below, > 0 above)", &CompandParams::V),
      real("C1", "enhancement weight peak above V: 4 C1 (u - V)(1 - u) / (1 - V)^2", &CompandParams::C1),
      real("C2", "enhancement weight amplitude below V: -4 C2 (V - u) u / (3 V^2)", &CompandParams::C2),
      integer("srnd_radius", "surround blur radius in pixels (sigma = radius / 2)", &CompandParams::srnd_radius),
      integer("N", "coarsest contrast level; the Gaussian pyramid has N + 2 levels", &CompandParams::N),
      real("kernel_a", "generating kernel center weight: [1/4 - a/2, 1/4, a, 1/4, 1/4 - a/2]", &CompandParams::kernel_a),
      real("mu", "texture exponent: |B_n - expand(B_n+1)|^mu", &CompandParams::mu),
      list("w_n", "per-level texture blend weights in [0, 1], N + 1 entries", &CompandParams::w_n),
      {"m", "teeth level for the soft threshold exp(-B_m / max B_m); 'auto' derives it from pixel spacing",
       [](const CompandParams& p) { return p.m ? std::to_string(*p.m) : std::string("auto"); },
       [](std::string_view v, CompandParams& p) {
         v = trim(v);
         if (v == "auto") {
           p.m.reset();
           return true;
         }
         int m = 0;
         if (!parse_int(v, m)) return false;
         p.m = m;
         return true;
       }},
      real("A", "bone channel amplitude in delta = A (1 - ST) lambda_bone + B ST lambda_soft", &CompandParams::A),
      real("B", "soft-tissue channel amplitude in delta", &CompandParams::B),
      list("lambda_bone", "per-level bone channel gains, N + 1 entries", &CompandParams::lambda_bone),
      list("lambda_soft", "per-level soft-tissue channel gains, N + 1 entries", &CompandParams::lambda_soft),
      real("alpha", "Naka-Rushton R = r_max / (alpha + (beta / C)^gamma) + b", &CompandParams::alpha),
      real("beta", "must be 1 so every response curve passes through C = 1", &CompandParams::beta),
      real("b", "response offset", &CompandParams::b),
      real("r_max", "must equal (alpha + 1)(1 - b)", &CompandParams::r_max),
      real("epsilon", "floor for normalized intensities and contrast denominators", &CompandParams::epsilon),
      real("lo_pct", "output stretch lower percentile", &CompandParams::lo_pct),
      real("hi_pct", "output stretch upper percentile", &CompandParams::hi_pct),
      integer("bit_depth", "output bit depth, 8 or 16", &CompandParams::bit_depth),
  };
  return table;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

}  // namespace

ParamFileError::ParamFileError(std::vector<std::string> problems)
    : ParamError(join_lines(problems)), problems_(std::move(problems)) {}

std::string dump_params(const CompandParams& p, bool with_comments) {
  std::ostringstream out;
  if (with_comments) out << "# ct_compand parameters\n";
  for (const auto& f : fields()) {
    if (with_comments) out << "\n# " << f.comment << '\n';
    out << f.key << " = " << f.write(p) << '\n';
  }
  return out.str();
}

CompandParams parse_params(std::string_view text) {
  CompandParams p;
  std::vector<std::string> problems;
  std::map<std::string, int, std::less<>> seen;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* field = nullptr;
    for (const auto& f : fields()) {
      if (key == f.key) field = &f;
    }
    if (field == nullptr) {
      problems.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (seen.count(key)) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    seen[key] = static_cast<int>(line_no);
    if (!field->read(value, p)) {
      problems.push_back("line " + std::to_string(line_no) + ": bad value for '" + key + "': " +
                         std::string(value));
    }
  }
  for (const auto& f : fields()) {
    if (!seen.count(f.key)) problems.push_back(std::string("missing key '") + f.key + "'");
  }
  if (!problems.empty()) throw ParamFileError(std::move(problems));
  return p;
}

CompandParams load_params(const std::string& path) {
  const auto bytes = read_file(path);
  return parse_params(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string param_hash(const CompandParams& p) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : dump_params(p, false)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ctc
