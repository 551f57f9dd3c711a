#include "cli.hpp"

#include "cartan/builders.hpp"
#include "cartan/contraction.hpp"
#include "cartan/errors.hpp"
#include "cartan/formulas.hpp"
#include "cartan/intlinalg.hpp"
#include "cartan/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace cartan::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family = "all";
  std::int64_t s_p = 0;
  std::int64_t p = 0;
  std::string p_range;
  std::string format;
  std::string target = "minimal";
  std::string out_path;
  std::string matrix_path;
  bool trace = false;
  bool transforms = false;
  unsigned jobs = 0;
};

std::optional<CartanType> parse_type(std::string_view s) {
  if (s == "ns") return CartanType::NonSplit;
  if (s == "ns+") return CartanType::NonSplitPlus;
  if (s == "s") return CartanType::Split;
  if (s == "s+") return CartanType::SplitPlus;
  return std::nullopt;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

// "ns", "ns+", "s", "s+", "all", "<type>-fine" (needs --s-p) or "<type>:fine:<s_P>".
std::vector<CurveFamily> parse_families(const Options& o, bool allow_all) {
  const std::string& sel = o.family;
  if (sel == "all") {
    if (!allow_all) throw UsageError("--family all is only valid for compgroup and verify");
    return {CurveFamily::coarse(CartanType::NonSplit), CurveFamily::coarse(CartanType::NonSplitPlus),
            CurveFamily::coarse(CartanType::Split), CurveFamily::coarse(CartanType::SplitPlus)};
  }
  try {
    if (const auto colon = sel.find(":fine:"); colon != std::string::npos) {
      const auto type = parse_type(sel.substr(0, colon));
      if (!type) throw UsageError("unknown family '" + sel + "'");
      return {CurveFamily::fine(*type, parse_int(sel.substr(colon + 6), "s_P"))};
    }
    if (sel.ends_with("-fine")) {
      const auto type = parse_type(sel.substr(0, sel.size() - 5));
      if (!type) throw UsageError("unknown family '" + sel + "'");
      if (o.s_p == 0) throw UsageError("fine families need --s-p");
      return {CurveFamily::fine(*type, o.s_p)};
    }
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const auto type = parse_type(sel);
  if (!type) throw UsageError("unknown family '" + sel + "' (expected ns, ns+, s, s+, all or <family>-fine)");
  return {CurveFamily::coarse(*type)};
}

constexpr const char* kPrimeMessage = "p must be a prime ≥ 5";

std::vector<std::int64_t> parse_primes(const Options& o) {
  if (!o.p_range.empty()) {
    if (o.p != 0) throw UsageError("give either --p or --p-range, not both");
    const auto dots = o.p_range.find("..");
    if (dots == std::string::npos) throw UsageError("--p-range must look like A..B");
    const std::int64_t lo = parse_int(o.p_range.substr(0, dots), "range start");
    const std::int64_t hi = parse_int(o.p_range.substr(dots + 2), "range end");
    if (lo < 5 || hi < 5) throw UsageError("prime range endpoints must be ≥ 5");
    if (lo > hi) throw UsageError("empty prime range");
    std::vector<std::int64_t> primes;
    for (std::int64_t n = lo; n <= hi; ++n)
      if (is_prime(n)) primes.push_back(n);
    return primes;
  }
  if (o.p < 5 || !is_prime(o.p)) throw UsageError(kPrimeMessage);
  return {o.p};
}

std::int64_t single_prime(const Options& o) {
  if (!o.p_range.empty()) throw UsageError("this command takes a single --p");
  return parse_primes(o).front();
}

const CurveFamily& single_family(const std::vector<CurveFamily>& families) {
  if (families.size() != 1) throw UsageError("this command takes a single family");
  return families.front();
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), format) == allowed.end()) {
    throw UsageError("unsupported --format '" + format + "' for this command");
  }
}

ContractionTrace contract(const SpecialFiber& fiber, const std::string& target) {
  if (target == "minimal") return contract_to_minimal(fiber);
  if (target == "ncd") return contract_to_minimal_ncd(fiber);
  throw UsageError("--target must be minimal or ncd");
}

std::string cell(const std::string& s, std::size_t width) {
  return s + std::string(s.size() + 2 > width ? 2 : width - s.size(), ' ');
}

std::string cmd_build(const Options& o) {
  const SpecialFiber fiber = build_fiber(single_family(parse_families(o, false)), single_prime(o));
  const std::string format = o.format.empty() ? "json" : o.format;
  require_format(format, {"json", "dot", "table"});
  if (format == "dot") return io::fiber_to_dot(fiber);
  if (format == "table") return io::fiber_to_table(fiber);
  return io::dump(io::fiber_to_json(fiber));
}

std::string cmd_contract(const Options& o) {
  const SpecialFiber fiber = build_fiber(single_family(parse_families(o, false)), single_prime(o));
  const ContractionTrace trace = contract(fiber, o.target);
  const std::string format = o.format.empty() ? "json" : o.format;
  require_format(format, {"json", "dot", "table"});
  if (format == "dot") return o.trace ? io::trace_to_dot(trace) : io::fiber_to_dot(trace.final_fiber);
  if (format == "table") {
    std::string out = io::fiber_to_table(trace.final_fiber);
    if (o.trace) {
      out += "contracted:";
      for (const auto& label : trace.contracted_labels()) out += " " + label;
      out += "\n";
    }
    return out;
  }
  if (o.trace) return io::dump(io::trace_to_json(trace));
  return io::dump(io::fiber_to_json(trace.final_fiber));
}

std::string cmd_export(const Options& o) {
  SpecialFiber fiber = build_fiber(single_family(parse_families(o, false)), single_prime(o));
  if (o.target != "none") fiber = contract(fiber, o.target).final_fiber;
  const std::string format = o.format.empty() ? "json" : o.format;
  require_format(format, {"json", "dot", "table"});
  if (format == "dot") return io::fiber_to_dot(fiber);
  const IntersectionMatrix m = intersection_matrix(fiber);
  if (format == "table") return io::matrix_to_table(fiber, m);
  return io::dump(io::intersection_matrix_to_json(fiber, m));
}

std::string cmd_compgroup(const Options& o) {
  const auto families = parse_families(o, true);
  const auto primes = parse_primes(o);
  const std::string format = o.format.empty() ? "table" : o.format;
  require_format(format, {"table", "json"});
  io::Json rows = io::Json::array();
  std::ostringstream table;
  const bool single = families.size() == 1 && primes.size() == 1;
  for (std::int64_t p : primes) {
    for (const auto& family : families) {
      const AbelianGroup g = component_group(build_fiber(family, p));
      io::Json row = io::group_to_json(g);
      row["family"] = family.name();
      row["prime"] = p;
      rows.push_back(std::move(row));
      if (single) {
        table << g.to_string() << '\n';
      } else {
        table << cell(std::to_string(p), 6) << cell(family.name(), 16) << g.to_string() << '\n';
      }
    }
  }
  if (format == "json") return io::dump(single ? rows.front() : rows);
  return table.str();
}

std::vector<VerificationReport> verify_all(const std::vector<CurveFamily>& families,
                                           const std::vector<std::int64_t>& primes, unsigned jobs) {
  struct Task {
    const CurveFamily* family;
    std::int64_t p;
  };
  std::vector<Task> tasks;
  for (std::int64_t p : primes)
    for (const auto& f : families) tasks.push_back({&f, p});
  std::vector<std::optional<VerificationReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = verify(*tasks[i].family, tasks[i].p);
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<VerificationReport> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

std::pair<std::string, bool> cmd_verify(const Options& o) {
  const auto families = parse_families(o, true);
  const auto primes = parse_primes(o);
  const std::string format = o.format.empty() ? "table" : o.format;
  require_format(format, {"table", "json"});
  const auto reports = verify_all(families, primes, o.jobs);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });

  if (format == "json") {
    io::Json j = io::Json::array();
    for (const auto& r : reports) j.push_back(io::report_to_json(r));
    return {io::dump(j), ok};
  }
  auto value = [](const VerificationReport& r, std::string_view check, bool expected) -> std::string {
    const CheckRecord* c = r.find(check);
    if (!c) return "-";
    return expected ? c->expected : c->computed;
  };
  std::ostringstream out;
  out << cell("p", 6) << cell("family", 16) << cell("computed", 34) << cell("expected", 34) << cell("n(p)", 10)
      << "result\n";
  std::size_t failures = 0;
  for (const auto& r : reports) {
    out << cell(std::to_string(r.p), 6) << cell(r.family.name(), 16) << cell(value(r, "component_group", false), 34)
        << cell(value(r, "component_group", true), 34)
        << cell(value(r, "minimal_component_count", false) + "/" + value(r, "minimal_component_count", true), 10)
        << (r.passed() ? "pass" : "FAIL") << '\n';
    for (const auto& c : r.checks) {
      if (c.pass) continue;
      ++failures;
      out << "      ! " << c.check << ": computed " << c.computed << ", expected " << c.expected << '\n';
    }
  }
  out << reports.size() << " fibers verified, " << failures << " failed checks\n";
  return {out.str(), ok};
}

std::string cmd_snf(const Options& o) {
  const std::string format = o.format.empty() ? "table" : o.format;
  require_format(format, {"table", "json"});
  std::string text;
  if (o.matrix_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(o.matrix_path);
    if (!in) throw UsageError("cannot read matrix file '" + o.matrix_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  IntMatrix m;
  try {
    m = io::matrix_from_json(io::Json::parse(text));
  } catch (const io::Json::exception& e) {
    throw UsageError(std::string("malformed matrix JSON: ") + e.what());
  } catch (const FormatError& e) {
    throw UsageError(std::string("malformed matrix JSON: ") + e.what());
  }
  if (m.empty()) throw UsageError("matrix is empty");
  const SmithDecomposition snf = smith_normal_form(m, {.compute_transforms = o.transforms});
  if (format == "json") return io::dump(io::smith_to_json(snf));

  std::ostringstream out;
  const auto d = snf.divisors();
  out << "diagonal: diag(";
  for (std::size_t i = 0; i < d.size(); ++i) out << (i ? ", " : "") << d[i];
  out << ")\nrank: " << snf.rank() << '\n';
  std::vector<Integer> nonzero;
  for (const auto& x : d)
    if (x != 0) nonzero.push_back(x);
  out << "cokernel: " << AbelianGroup::from_cyclic_orders(nonzero, m.rows() - snf.rank()).to_string() << '\n';
  if (snf.left && snf.right) {
    out << "left:\n" << io::dump(io::matrix_to_json(*snf.left));
    out << "right:\n" << io::dump(io::matrix_to_json(*snf.right));
  }
  return out.str();
}

void add_family_options(CLI::App* cmd, Options& o, bool with_range) {
  cmd->add_option("--family", o.family, "ns | ns+ | s | s+ | all | <family>-fine | <family>:fine:<s_P>");
  cmd->add_option("--s-p", o.s_p, "supersingular-point count for fine families");
  cmd->add_option("--p", o.p, "prime p >= 5");
  if (with_range) cmd->add_option("--p-range", o.p_range, "inclusive prime range A..B");
  cmd->add_option("--format", o.format, "output format");
  cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular and minimal models of Cartan modular curves at p, and Neron component groups"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "emit the special fiber of the regular model");
  add_family_options(build, o, false);
  auto* contract_cmd = app.add_subcommand("contract", "blow down to the minimal (ncd) model");
  add_family_options(contract_cmd, o, false);
  contract_cmd->add_option("--target", o.target, "minimal | ncd");
  contract_cmd->add_flag("--trace", o.trace, "include every blow-down step");
  auto* compgroup = app.add_subcommand("compgroup", "component group of the Neron model");
  add_family_options(compgroup, o, true);
  auto* verify_cmd = app.add_subcommand("verify", "check the pipeline against the closed forms");
  add_family_options(verify_cmd, o, true);
  verify_cmd->add_option("--jobs", o.jobs, "worker threads (default: all cores)");
  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix JSON file");
  snf->add_option("matrix", o.matrix_path, "matrix JSON file, or - for stdin")->required();
  snf->add_flag("--transforms", o.transforms, "also emit the unimodular transforms");
  snf->add_option("--format", o.format, "table | json");
  snf->add_option("--out", o.out_path, "write output to this file instead of stdout");
  auto* export_cmd = app.add_subcommand("export", "intersection matrix (json, table) or dual graph (dot)");
  add_family_options(export_cmd, o, false);
  o.target = "minimal";
  export_cmd->add_option("--target", o.target, "none | minimal | ncd");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    const std::string help = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
    err << "error: " << e.what() << '\n' << help;
    return kUsageError;
  }

  try {
    std::string text;
    int code = kSuccess;
    if (build->parsed()) {
      text = cmd_build(o);
    } else if (contract_cmd->parsed()) {
      text = cmd_contract(o);
    } else if (export_cmd->parsed()) {
      if (o.target == "minimal" && !export_cmd->count("--target")) o.target = "none";
      text = cmd_export(o);
    } else if (compgroup->parsed()) {
      text = cmd_compgroup(o);
    } else if (verify_cmd->parsed()) {
      auto [t, ok] = cmd_verify(o);
      text = std::move(t);
      if (!ok) code = kInvariantFailure;
    } else if (snf->parsed()) {
      text = cmd_snf(o);
    }
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + o.out_path + "'");
      file << text;
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidPrime& e) {
    err << "error: " << kPrimeMessage << '\n';
    return kUsageError;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantFailure;
  }
}

}  // namespace cartan::cli
