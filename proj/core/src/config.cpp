#include "lpres/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lpres/report.hpp"
#include "lpres/space.hpp"

namespace lpres {

namespace {

struct Line {
  int number;
  std::string section;  // current section at this line
  std::string key;
  std::string value;
  int key_column;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line, int col) {
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + tok + "'", line, col);
  }
}

std::vector<double> parse_numbers(const std::string& value, int line, int col) {
  std::vector<double> out;
  for (const auto& tok : split_ws(value)) out.push_back(parse_number(tok, line, col));
  return out;
}

struct OperatorSection {
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
};

MonotoneOperatorSpec build_operator(const OperatorSection& sec, std::size_t dim) {
  auto get = [&](const std::string& key) -> const std::pair<std::string, int>* {
    auto it = sec.kv.find(key);
    return it == sec.kv.end() ? nullptr : &it->second;
  };
  const auto* variant = get("variant");
  if (!variant) {
    throw ParseError("operator section missing 'variant'", sec.line, 1);
  }
  std::vector<std::string> allowed = {"variant", "domain_radius"};
  MonotoneOperatorSpec spec;
  const std::string& name = variant->first;
  if (name == "zero") {
    spec.variant = ZeroOp{};
  } else if (name == "constant") {
    allowed.push_back("c");
    const auto* c = get("c");
    if (!c) throw ParseError("constant operator requires 'c'", sec.line, 1);
    spec.variant = ConstantOp{parse_numbers(c->first, c->second, 1)};
  } else if (name == "linear_psd") {
    allowed.push_back("matrix");
    const auto* m = get("matrix");
    if (!m) throw ParseError("linear_psd operator requires 'matrix'", sec.line, 1);
    std::vector<std::vector<double>> rows;
    std::string row;
    std::istringstream in(m->first);
    while (std::getline(in, row, ';')) {
      rows.push_back(parse_numbers(row, m->second, 1));
    }
    spec.variant = LinearPsdOp{std::move(rows)};
  } else if (name == "scaled_duality") {
    allowed.push_back("lambda");
    const auto* l = get("lambda");
    if (!l) throw ParseError("scaled_duality requires 'lambda'", sec.line, 1);
    spec.variant = ScaledDualityOp{parse_number(l->first, l->second, 1)};
  } else if (name == "grad_quadratic") {
    allowed.push_back("lambda");
    allowed.push_back("b");
    const auto* l = get("lambda");
    const auto* b = get("b");
    if (!l || !b) {
      throw ParseError("grad_quadratic requires 'lambda' and 'b'", sec.line, 1);
    }
    spec.variant = GradQuadraticOp{parse_numbers(b->first, b->second, 1),
                                   parse_number(l->first, l->second, 1)};
  } else if (name == "subgrad_l1") {
    allowed.push_back("gamma");
    const auto* g = get("gamma");
    if (!g) throw ParseError("subgrad_l1 requires 'gamma'", sec.line, 1);
    spec.variant = SubgradL1Op{parse_number(g->first, g->second, 1)};
  } else {
    throw ParseError("unknown operator variant '" + name + "'", sec.line, 1);
  }
  if (const auto* dr = get("domain_radius")) {
    spec.domain_radius = parse_number(dr->first, dr->second, 1);
    if (!(spec.domain_radius > 0.0)) {
      throw ParseError("domain_radius must be positive", dr->second, 1);
    }
  }
  for (const auto& [key, value] : sec.kv) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError("unknown operator key '" + key + "'", value.second, 1);
    }
  }
  (void)dim;
  return spec;
}

void serialize_operator(const MonotoneOperatorSpec& spec, std::ostringstream& out);

void serialize_one(const MonotoneOperatorSpec& spec, std::ostringstream& out) {
  out << "[operator]\n";
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ZeroOp>) {
          out << "variant = zero\n";
        } else if constexpr (std::is_same_v<T, ConstantOp>) {
          out << "variant = constant\nc =";
          for (double c : v.c) out << " " << format_double(c);
          out << "\n";
        } else if constexpr (std::is_same_v<T, LinearPsdOp>) {
          out << "variant = linear_psd\nmatrix = ";
          for (std::size_t i = 0; i < v.matrix.size(); ++i) {
            if (i) out << " ; ";
            for (std::size_t j = 0; j < v.matrix[i].size(); ++j) {
              if (j) out << " ";
              out << format_double(v.matrix[i][j]);
            }
          }
          out << "\n";
        } else if constexpr (std::is_same_v<T, ScaledDualityOp>) {
          out << "variant = scaled_duality\nlambda = " << format_double(v.lambda)
              << "\n";
        } else if constexpr (std::is_same_v<T, GradQuadraticOp>) {
          out << "variant = grad_quadratic\nlambda = " << format_double(v.lambda)
              << "\nb =";
          for (double c : v.b) out << " " << format_double(c);
          out << "\n";
        } else if constexpr (std::is_same_v<T, SubgradL1Op>) {
          out << "variant = subgrad_l1\ngamma = " << format_double(v.gamma) << "\n";
        }
      },
      spec.variant);
  if (std::isfinite(spec.domain_radius)) {
    out << "domain_radius = " << format_double(spec.domain_radius) << "\n";
  }
  out << "\n";
}

void serialize_operator(const MonotoneOperatorSpec& spec, std::ostringstream& out) {
  if (const auto* sum = std::get_if<SumOp>(&spec.variant)) {
    for (const auto& member : sum->members) serialize_one(member, out);
  } else {
    serialize_one(spec, out);
  }
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "phi_identity",       "estimate_mu",
      "strong_monotonicity", "support_inequality",
      "keylem1",            "normalization_inequality",
      "theorem_main1",      "holder_T",
      "monotonicity",       "adversarial_main1",
      "adversarial_keyinequ2", "adversarial_support",
      "adversarial_keylem1"};
  return names;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& name : requested) {
    if (name == "all") {
      for (const auto& known : known_checks()) out.push_back(known);
      continue;
    }
    if (std::find(known_checks().begin(), known_checks().end(), name) ==
        known_checks().end()) {
      throw std::invalid_argument("unknown check name '" + name + "'");
    }
    out.push_back(name);
  }
  // deduplicate, preserving canonical order
  std::vector<std::string> merged;
  for (const auto& known : known_checks()) {
    if (std::find(out.begin(), out.end(), known) != out.end()) {
      merged.push_back(known);
    }
  }
  return merged;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  bool saw_space = false, saw_operator = false;
  std::vector<OperatorSection> operator_sections;
  std::string section;
  OperatorSection* current_op = nullptr;

  std::map<std::string, std::pair<std::string, int>> space_kv, sampler_kv, run_kv;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("unterminated section header", line_no,
                         int(raw.find('[')) + 1);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section == "operator") {
        operator_sections.push_back(OperatorSection{line_no, {}});
        current_op = &operator_sections.back();
        saw_operator = true;
      } else if (section == "space") {
        saw_space = true;
        current_op = nullptr;
      } else if (section == "sampler" || section == "run") {
        current_op = nullptr;
      } else {
        throw ParseError("unknown section '" + section + "'", line_no, 1);
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line_no, 1);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    int col = int(raw.find(key)) + 1;
    if (key.empty()) throw ParseError("empty key", line_no, col);
    if (section.empty()) {
      throw ParseError("key outside any section", line_no, col);
    }
    if (section == "operator") {
      if (!current_op->kv.emplace(key, std::make_pair(value, line_no)).second) {
        throw ParseError("duplicate key '" + key + "'", line_no, col);
      }
    } else {
      auto& kv = (section == "space")     ? space_kv
                 : (section == "sampler") ? sampler_kv
                                          : run_kv;
      if (!kv.emplace(key, std::make_pair(value, line_no)).second) {
        throw ParseError("duplicate key '" + key + "'", line_no, col);
      }
    }
  }

  (void)saw_space;
  for (const auto& [key, vp] : space_kv) {
    const auto& [value, vline] = vp;
    if (key == "dim") {
      double d = parse_number(value, vline, 1);
      if (d < 1.0 || d != std::floor(d)) {
        throw ParseError("dim must be a positive integer", vline, 1);
      }
      config.dim = std::size_t(d);
    } else if (key == "p") {
      config.p = parse_number(value, vline, 1);
      if (!(config.p > 1.0) || !std::isfinite(config.p)) {
        throw ParseError("exponent must exceed 1", vline, 1);
      }
    } else {
      throw ParseError("unknown space key '" + key + "'", vline, 1);
    }
  }
  for (const auto& [key, vp] : sampler_kv) {
    const auto& [value, vline] = vp;
    if (key == "seed") {
      config.sampler.seed = std::stoull(value);
    } else if (key == "count") {
      double c = parse_number(value, vline, 1);
      if (c < 1.0) throw ParseError("count must be >= 1", vline, 1);
      config.sampler.count = std::size_t(c);
    } else if (key == "radius") {
      config.sampler.radius = parse_number(value, vline, 1);
      if (!(config.sampler.radius > 0.0)) {
        throw ParseError("radius must be positive", vline, 1);
      }
    } else if (key == "decades") {
      auto nums = parse_numbers(value, vline, 1);
      if (nums.size() != 2 || !(nums[0] < nums[1])) {
        throw ParseError("decades must be two numbers lo < hi", vline, 1);
      }
      config.sampler.scale_decades_lo = nums[0];
      config.sampler.scale_decades_hi = nums[1];
    } else {
      throw ParseError("unknown sampler key '" + key + "'", vline, 1);
    }
  }
  for (const auto& [key, vp] : run_kv) {
    const auto& [value, vline] = vp;
    if (key == "checks") {
      config.checks.clear();
      for (const auto& tok : split_ws(value)) config.checks.push_back(tok);
      if (config.checks.empty()) {
        throw ParseError("checks list must be nonempty", vline, 1);
      }
      try {
        expand_checks(config.checks);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), vline, 1);
      }
    } else if (key == "r_values") {
      config.r_values = parse_numbers(value, vline, 1);
      for (double r : config.r_values) {
        if (!(r > 0.0)) throw ParseError("r values must be positive", vline, 1);
      }
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "format") {
      if (value == "csv") {
        config.format = OutputFormat::csv;
      } else if (value == "json") {
        config.format = OutputFormat::json;
      } else {
        throw ParseError("format must be csv or json", vline, 1);
      }
    } else if (key == "jobs") {
      double j = parse_number(value, vline, 1);
      if (j < 1.0) throw ParseError("jobs must be >= 1", vline, 1);
      config.jobs = int(j);
    } else {
      throw ParseError("unknown run key '" + key + "'", vline, 1);
    }
  }

  if (saw_operator) {
    if (operator_sections.size() == 1) {
      config.op = build_operator(operator_sections[0], config.dim);
    } else {
      SumOp sum;
      for (const auto& sec : operator_sections) {
        sum.members.push_back(build_operator(sec, config.dim));
      }
      config.op = MonotoneOperatorSpec{std::move(sum), config.op.domain_radius};
    }
  }
  SpaceDescriptor space = SpaceDescriptor::lp(config.dim, config.p);
  try {
    config.op.validate(space);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return config;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[space]\n";
  out << "dim = " << config.dim << "\n";
  out << "p = " << format_double(config.p) << "\n\n";
  out << "[sampler]\n";
  out << "seed = " << config.sampler.seed << "\n";
  out << "count = " << config.sampler.count << "\n";
  out << "radius = " << format_double(config.sampler.radius) << "\n";
  out << "decades = " << format_double(config.sampler.scale_decades_lo) << " "
      << format_double(config.sampler.scale_decades_hi) << "\n\n";
  out << "[run]\n";
  out << "checks =";
  for (const auto& c : config.checks) out << " " << c;
  out << "\n";
  out << "r_values =";
  for (double r : config.r_values) out << " " << format_double(r);
  out << "\n";
  out << "output_dir = " << config.output_dir << "\n";
  out << "format = " << (config.format == OutputFormat::csv ? "csv" : "json") << "\n";
  out << "jobs = " << config.jobs << "\n\n";
  serialize_operator(config.op, out);
  return out.str();
}

}  // namespace lpres
