#include "qzeta/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "qzeta/analysis.hpp"
#include "qzeta/fseries.hpp"
#include "qzeta/limits.hpp"
#include "qzeta/parallel.hpp"
#include "qzeta/sumformula.hpp"

namespace qzeta::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<Command, std::string>> command_names = {
    {Command::eval, "eval"},         {Command::sum_formula, "sum-formula"}, {Command::theorem3, "theorem3"},
    {Command::theorem4, "theorem4"}, {Command::f_identity, "f-identity"},   {Command::lemmas, "lemmas"},
    {Command::limit, "limit"},       {Command::scan, "scan"},
};

enum class Kind { index, complex, real, integer, flag, text };

Kind kind_of(const std::string& name) {
  if (name == "index") return Kind::index;
  if (name == "s" || name == "alpha") return Kind::complex;
  if (name == "q" || name == "u-max") return Kind::real;
  if (name == "cont") return Kind::flag;
  if (name == "lemma") return Kind::text;
  return Kind::integer;  // k, r, b, D, d, m1, n-max, points
}

const std::map<std::string, std::vector<std::string>> defaults = {
    {"q", {"0.5"}},       {"D", {"0"}},         {"d", {"1"}},         {"m1", {"1"}},     {"n-max", {"400"}},
    {"points", {"10000"}}, {"u-max", {"1000"}}, {"lemma", {"lemma1"}}, {"cont", {"false"}},
};

const std::vector<std::string> lemma_names = {"lemma1", "lemma2", "dalpha", "bounds"};

std::vector<std::string> used_params(Command c, const std::string& lemma) {
  switch (c) {
    case Command::eval:
      return {"index", "q", "cont"};
    case Command::sum_formula:
      return {"k", "r", "q"};
    case Command::theorem3:
      return {"s", "q", "n-max"};
    case Command::theorem4:
      return {"b", "s", "q"};
    case Command::f_identity:
      return {"D", "s", "d", "q"};
    case Command::limit:
      return {"index"};  // the q list is the extrapolation grid
    case Command::lemmas:
      if (lemma == "lemma1") return {"m1", "q"};
      if (lemma == "lemma2" || lemma == "dalpha") return {"s", "alpha", "q"};
      return {"points", "u-max"};
    case Command::scan:
      break;
  }
  return {};
}

std::string format_real(Real x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0) return format_real(z.real());
  const std::string im = format_real(std::abs(z.imag()));
  return format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::int64_t parse_integer(const std::string& text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw UsageError("malformed integer: '" + text + "'");
  return v;
}

Real parse_real(const std::string& text) {
  const Complex z = parse_complex(text);
  if (z.imag() != 0) throw UsageError("expected a real number: '" + text + "'");
  return z.real();
}

bool parse_flag(const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw UsageError("malformed flag value: '" + text + "'");
}

MultiIndex parse_index(const std::string& text) {
  std::vector<Complex> entries;
  for (const std::string& part : split(text, ',')) entries.push_back(parse_complex(part));
  if (entries.empty()) throw UsageError("empty index");
  return MultiIndex(entries);
}

void check_value(const std::string& name, const std::string& value) {
  switch (kind_of(name)) {
    case Kind::index:
      parse_index(value);
      break;
    case Kind::complex:
      parse_complex(value);
      break;
    case Kind::real:
      parse_real(value);
      break;
    case Kind::integer:
      parse_integer(value);
      break;
    case Kind::flag:
      parse_flag(value);
      break;
    case Kind::text:
      if (std::find(lemma_names.begin(), lemma_names.end(), value) == lemma_names.end())
        throw UsageError("unknown lemma '" + value + "'");
      break;
  }
}

using Case = std::vector<std::pair<std::string, std::string>>;

class CaseView {
 public:
  explicit CaseView(const Case& c) : case_(c) {}
  const std::string& raw(const std::string& name) const {
    for (const auto& [k, v] : case_)
      if (k == name) return v;
    throw UsageError("missing parameter '" + name + "'");
  }
  Complex complex(const std::string& name) const { return parse_complex(raw(name)); }
  Real real(const std::string& name) const { return parse_real(raw(name)); }
  int integer(const std::string& name) const { return static_cast<int>(parse_integer(raw(name))); }
  std::int64_t integer64(const std::string& name) const { return parse_integer(raw(name)); }
  QParam q() const { return QParam(real("q")); }
  MultiIndex index() const { return parse_index(raw("index")); }

 private:
  const Case& case_;
};

void fill_from_report(Record& rec, const SumFormulaReport& rep) {
  rec.lhs = rep.lhs;
  rec.rhs = rep.rhs;
  rec.abs_diff = rep.abs_diff;
  rec.error_estimate = rep.error_estimate;
  rec.converged = rep.converged;
  rec.convention_note = rep.convention_note;
}

void fill_from_pair(Record& rec, const SummationResult& lhs, const SummationResult& rhs) {
  fill_from_report(rec, make_report(lhs, rhs));
}

std::string sci(Real x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

Real default_tolerance(Command c, const CaseView& v) {
  switch (c) {
    case Command::sum_formula:
      return 1e-9;
    case Command::theorem3:
      return v.complex("s").real() > 2 ? 1e-6 : 1e-4;
    case Command::theorem4:
      return 1e-7;
    case Command::f_identity:
      return f_identity_threshold;
    case Command::limit:
      return 5e-4;
    default:
      return 0;
  }
}

void evaluate(Command c, const Case& cs, const RunConfig& cfg, Record& rec) {
  const CaseView v(cs);
  const TruncationPolicy& pol = cfg.policy;
  rec.tolerance = cfg.tolerance.value_or(default_tolerance(c, v));
  switch (c) {
    case Command::eval: {
      const MultiIndex idx = v.index();
      SummationResult z;
      if (parse_flag(v.raw("cont")) && idx.depth() == 1) {
        z = zeta_q_one_cont(idx[0], v.q(), pol);
      } else if (parse_flag(v.raw("cont")) && idx.depth() == 2) {
        z = zeta_q_two_cont(idx[0] + idx[1], idx[1], v.q(), pol);
      } else {
        z = zeta_q(idx, v.q(), pol);
      }
      fill_from_pair(rec, z, z);
      rec.error_estimate = z.abs_error_estimate;
      rec.convention_note = "value in lhs; rhs repeats it";
      break;
    }
    case Command::sum_formula:
      fill_from_report(rec, check_sum_formula_qmzv(v.integer("k"), v.integer("r"), v.q(), pol));
      break;
    case Command::theorem3: {
      const Complex s = v.complex("s");
      const NSeriesResult lhs = interpolated_sum_depth2(s, v.q(), pol, v.integer64("n-max"));
      const SummationResult rhs = s.real() > 2 ? zeta_q(MultiIndex{s}, v.q(), pol) : zeta_q_one_cont(s, v.q(), pol);
      fill_from_pair(rec, lhs.result, rhs);
      rec.convention_note = "tail estimate " + sci(lhs.tail_estimate) + ", fitted summand exponent " +
                            sci(lhs.fitted_exponent) + "; " +
                            (s.real() > 2 ? "direct summands" : "summands by integral representation");
      break;
    }
    case Command::theorem4: {
      const SumFormulaReport rep = check_theorem4(v.integer("b"), v.complex("s"), v.q(), pol);
      fill_from_report(rec, rep);
      if (rep.cross_diff) rec.convention_note += "; recursion vs closed form " + sci(*rep.cross_diff);
      break;
    }
    case Command::f_identity:
      fill_from_report(rec,
                       check_f_identity(v.integer("D"), v.complex("s"), v.integer("d"), v.q(), pol).report);
      break;
    case Command::lemmas: {
      const std::string& lemma = v.raw("lemma");
      if (lemma == "lemma1") {
        fill_from_report(rec, lemma1_check(v.integer64("m1"), v.q(), pol));
        if (!cfg.tolerance) rec.tolerance = 1e-10;
      } else if (lemma == "lemma2") {
        fill_from_report(rec, lemma2_check(v.complex("s"), v.complex("alpha"), v.q(), pol));
        if (!cfg.tolerance) rec.tolerance = 1e-8;
      } else if (lemma == "dalpha") {
        const SumFormulaReport rep = dalpha_zeta_check(v.complex("s"), v.complex("alpha"), v.q(), pol);
        fill_from_report(rec, rep);
        // the criterion is relative; scale it by |rhs|
        rec.tolerance = cfg.tolerance.value_or(1e-4) * std::abs(rep.rhs);
        rec.error_estimate = 0;  // the difference quotient error dominates and is not estimated
      } else {
        const BoundScan scan = scan_pointwise_bounds(v.integer64("points"), cfg.seed, v.real("u-max"));
        rec.lhs = Complex(static_cast<Real>(scan.lemma3_violations + scan.lemma4_violations));
        rec.rhs = Complex(0);
        rec.abs_diff = rec.lhs->real();
        rec.converged = true;
        rec.convention_note = "lhs counts violations: lemma3 " + std::to_string(scan.lemma3_violations) +
                              ", lemma4 " + std::to_string(scan.lemma4_violations) + " of " +
                              std::to_string(scan.points);
        if (scan.first_m != 0)
          rec.convention_note += "; first at m=" + std::to_string(scan.first_m) + " u=" + sci(scan.first_u) +
                                 " alpha=" + sci(scan.first_alpha) + " s=" + sci(scan.first_s) +
                                 " q=" + sci(scan.first_q);
        if (!cfg.tolerance) rec.tolerance = 0;
      }
      break;
    }
    case Command::limit: {
      std::vector<QParam> grid;
      const auto it = cfg.params.find("q");
      if (it == cfg.params.end()) {
        grid = default_q_grid();
      } else {
        for (const std::string& qs : it->second) grid.emplace_back(parse_real(qs));
      }
      const ExtrapolationReport rep = q_to_1_extrapolate(v.index(), grid, pol);
      rec.lhs = rep.extrapolated;
      rec.rhs = rep.reference.value_or(rep.extrapolated);
      rec.abs_diff = std::abs(*rec.lhs - *rec.rhs);
      rec.error_estimate = rep.error_estimate;
      rec.converged = rep.warnings.empty();
      rec.convention_note = "observed order " + sci(rep.observed_order) +
                            (rep.reference ? "; rhs is the classical value" : "; no classical reference");
      for (const std::string& w : rep.warnings) rec.convention_note += "; " + w;
      break;
    }
    case Command::scan:
      throw UsageError("scan cannot target scan");
  }
  rec.status = rec.abs_diff <= std::max(rec.tolerance, rec.error_estimate) ? exit_ok : exit_tolerance;
}

std::vector<Case> cross_product(const std::vector<std::string>& names,
                                const std::map<std::string, std::vector<std::string>>& params, Case prefix) {
  std::vector<Case> out{std::move(prefix)};
  for (const std::string& name : names) {
    const auto it = params.find(name);
    const std::vector<std::string>* values = nullptr;
    if (it != params.end() && !it->second.empty()) {
      values = &it->second;
    } else if (const auto d = defaults.find(name); d != defaults.end()) {
      values = &d->second;
    } else {
      throw UsageError("missing required parameter --" + name);
    }
    std::vector<Case> next;
    for (const Case& c : out)
      for (const std::string& val : *values) {
        Case e = c;
        e.emplace_back(name, val);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Case> build_cases(Command c, const std::map<std::string, std::vector<std::string>>& params) {
  if (c != Command::lemmas) return cross_product(used_params(c, {}), params, {});
  std::vector<Case> out;
  const auto it = params.find("lemma");
  const std::vector<std::string>& lemmas = it != params.end() ? it->second : defaults.at("lemma");
  for (const std::string& lemma : lemmas) {
    check_value("lemma", lemma);
    for (Case& cs : cross_product(used_params(c, lemma), params, {{"lemma", lemma}})) out.push_back(std::move(cs));
  }
  return out;
}

std::map<std::string, std::vector<std::string>> apply_grids(const RunConfig& cfg) {
  auto params = cfg.params;
  for (const std::string& g : cfg.grids) {
    const auto eq = g.find('=');
    if (eq == std::string::npos) throw UsageError("grid must look like name=start:stop:count: '" + g + "'");
    const std::string name = g.substr(0, eq);
    const Kind kind = kind_of(name);
    std::vector<std::string> values;
    for (const Complex z : parse_grid(g.substr(eq + 1))) {
      switch (kind) {
        case Kind::integer:
          values.push_back(std::to_string(std::llround(z.real())));
          break;
        case Kind::real:
          values.push_back(format_real(z.real()));
          break;
        case Kind::complex:
          values.push_back(format_complex(z));
          break;
        default:
          throw UsageError("parameter '" + name + "' cannot be scanned");
      }
    }
    params[name] = std::move(values);
  }
  return params;
}

std::string zero_pad(std::size_t i) {
  std::ostringstream os;
  os << std::setw(5) << std::setfill('0') << i;
  return os.str();
}

ordered_json complex_json(const std::optional<Complex>& z) {
  if (!z) return nullptr;
  return ordered_json{{"re", z->real()}, {"im", z->imag()}};
}

ordered_json input_json(const std::string& name, const std::string& value) {
  switch (kind_of(name)) {
    case Kind::index: {
      ordered_json arr = ordered_json::array();
      for (const std::string& part : split(value, ',')) arr.push_back(complex_json(parse_complex(part)));
      return arr;
    }
    case Kind::complex:
      return complex_json(parse_complex(value));
    case Kind::real:
      return parse_real(value);
    case Kind::integer:
      return parse_integer(value);
    case Kind::flag:
      return parse_flag(value);
    case Kind::text:
      break;
  }
  return value;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [c, n] : command_names)
    if (n == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  for (const auto& [cc, n] : command_names)
    if (cc == c) return n;
  return "?";
}

Complex parse_complex(const std::string& text) {
  static const std::regex re(
      R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw UsageError("malformed complex literal: '" + text + "'");
  const Real re_part = std::stod(m[1].str());
  Real im_part = 0;
  if (m[2].matched) im_part = (m[2].str() == "-" ? -1 : 1) * std::stod(m[3].str());
  return {re_part, im_part};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Complex> parse_grid(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError("grid must be start:stop:count: '" + spec + "'");
  const Complex a = parse_complex(parts[0]), b = parse_complex(parts[1]);
  const std::int64_t n = parse_integer(parts[2]);
  if (n < 1) throw UsageError("grid count must be positive");
  std::vector<Complex> out;
  for (std::int64_t i = 0; i < n; ++i)
    out.push_back(n == 1 ? a : a + (b - a) * (static_cast<Real>(i) / static_cast<Real>(n - 1)));
  return out;
}

std::vector<Record> run_cases(const RunConfig& config) {
  config.policy.validate();
  const Command target = config.command == Command::scan ? config.scan_target : config.command;
  if (target == Command::scan) throw UsageError("scan cannot target scan");
  const auto params = config.command == Command::scan ? apply_grids(config) : config.params;
  for (const auto& [name, values] : params)
    for (const std::string& val : values) check_value(name, val);
  const std::vector<Case> cases = build_cases(target, params);

  const std::string prefix = config.command == Command::scan ? "scan-" + command_name(target) : command_name(target);
  std::vector<Record> records(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    Record& rec = records[i];
    rec.case_id = prefix + "-" + zero_pad(i + 1);
    rec.command = command_name(target);
    rec.inputs = cases[i];
    try {
      evaluate(target, cases[i], config, rec);
    } catch (const DomainError& e) {
      rec.error = e.what();
      rec.status = exit_domain;
    } catch (const PoleProximityError& e) {
      rec.error = e.what();
      rec.status = exit_domain;
    } catch (const std::invalid_argument& e) {
      rec.error = e.what();
      rec.status = exit_usage;
    }
    if (!rec.error.empty()) {
      rec.lhs.reset();
      rec.rhs.reset();
      rec.abs_diff = 0;
      rec.error_estimate = 0;
      rec.converged = false;
    }
  });
  return records;
}

int exit_status(const std::vector<Record>& records) {
  int status = exit_ok;
  for (const Record& r : records) {
    if (r.status == exit_usage) return exit_usage;
    if (r.status == exit_domain) status = exit_domain;
    if (r.status == exit_tolerance && status == exit_ok) status = exit_tolerance;
  }
  return status;
}

void write_records(const std::vector<Record>& records, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    for (const Record& r : records) {
      ordered_json inputs = ordered_json::object();
      for (const auto& [k, val] : r.inputs) inputs[k] = input_json(k, val);
      ordered_json j;
      j["case_id"] = r.case_id;
      j["command"] = r.command;
      j["inputs"] = inputs;
      j["lhs"] = complex_json(r.lhs);
      j["rhs"] = complex_json(r.rhs);
      j["abs_diff"] = r.abs_diff;
      j["error_estimate"] = r.error_estimate;
      j["tolerance"] = r.tolerance;
      j["converged"] = r.converged;
      j["passed"] = r.status == exit_ok;
      j["convention_note"] = r.convention_note;
      j["error"] = r.error.empty() ? ordered_json(nullptr) : ordered_json(r.error);
      out << j.dump() << '\n';
    }
    return;
  }
  out << "case_id,command,inputs,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,error_estimate,tolerance,converged,passed,"
         "convention_note,error\n";
  auto pair = [](const std::optional<Complex>& z) {
    return z ? format_real(z->real()) + "," + format_real(z->imag()) : std::string(",");
  };
  for (const Record& r : records) {
    std::string inputs;
    for (const auto& [k, val] : r.inputs) inputs += (inputs.empty() ? "" : ";") + k + "=" + val;
    out << csv_field(r.case_id) << ',' << r.command << ',' << csv_field(inputs) << ',' << pair(r.lhs) << ','
        << pair(r.rhs) << ',' << format_real(r.abs_diff) << ',' << format_real(r.error_estimate) << ','
        << format_real(r.tolerance) << ',' << (r.converged ? "true" : "false") << ','
        << (r.status == exit_ok ? "true" : "false") << ',' << csv_field(r.convention_note) << ','
        << csv_field(r.error) << '\n';
  }
}

int run(const RunConfig& config, std::ostream& out) {
  const std::vector<Record> records = run_cases(config);
  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) throw UsageError("cannot open output file " + *config.output_path);
    write_records(records, config.format, file);
  } else {
    write_records(records, config.format, out);
  }
  return exit_status(records);
}

}  // namespace qzeta::cli
