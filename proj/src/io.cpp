#include "cartan/io.hpp"

#include "cartan/errors.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace cartan::io {

namespace {

// Small values as JSON numbers, anything wider as a decimal string.
Json small_integer(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return to_decimal(v);
}

Json decimal(const Integer& v) { return to_decimal(v); }

Integer read_integer(const Json& j, std::string_view what) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw FormatError(std::string(what) + " must be an integer or a decimal string");
}

ComponentId read_id(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw FormatError("component id must be a non-negative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v > std::numeric_limits<std::uint32_t>::max()) throw FormatError("component id too large");
  return ComponentId{static_cast<std::uint32_t>(v)};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json fiber_to_json(const SpecialFiber& fiber) {
  Json components = Json::array();
  for (const auto& c : fiber.components()) {
    components.push_back({{"id", c.id.value},
                          {"label", c.label},
                          {"multiplicity", small_integer(c.multiplicity)},
                          {"kind", std::string(to_string(c.kind))},
                          {"smooth_rational", std::string(to_string(c.smoothness))}});
  }
  Json pairing = Json::array();
  for (const auto& [pair, n] : fiber.pairing())
    pairing.push_back({pair.first.value, pair.second.value, small_integer(n)});

  Json j = {{"family", fiber.family().name()},
            {"prime", fiber.prime()},
            {"components", std::move(components)},
            {"pairing", std::move(pairing)}};
  if (const auto& selfs = fiber.self_intersections()) {
    Json s = Json::array();
    for (const auto& [id, v] : *selfs) s.push_back({id.value, decimal(v)});
    j["self_intersections"] = std::move(s);
  }
  if (!fiber.has_default_points()) {
    Json points = Json::array();
    for (const auto& point : fiber.points()) {
      Json through = Json::array();
      for (ComponentId id : point.through) through.push_back(id.value);
      Json local = Json::array();
      for (const auto& [pair, n] : point.local)
        local.push_back({pair.first.value, pair.second.value, small_integer(n)});
      points.push_back({{"through", std::move(through)}, {"local", std::move(local)}});
    }
    j["crossings"] = std::move(points);
  }
  return j;
}

SpecialFiber fiber_from_json(const Json& j) {
  const auto family_name = field(j, "family");
  if (!family_name.is_string()) throw FormatError("'family' must be a string");
  const auto family = CurveFamily::from_name(family_name.get<std::string>());
  if (!family) throw FormatError("unknown family '" + family_name.get<std::string>() + "'");
  const Json& prime = field(j, "prime");
  if (!prime.is_number_integer()) throw FormatError("'prime' must be an integer");

  std::vector<Component> components;
  for (const Json& c : field(j, "components")) {
    const auto kind = parse_component_kind(field(c, "kind").get<std::string>());
    const auto smooth = parse_smoothness(field(c, "smooth_rational").get<std::string>());
    if (!kind) throw FormatError("unknown component kind");
    if (!smooth) throw FormatError("unknown smooth_rational value");
    components.push_back({read_id(field(c, "id")), field(c, "label").get<std::string>(),
                          read_integer(field(c, "multiplicity"), "multiplicity"), *kind, *smooth});
  }

  Pairing pairing;
  for (const Json& entry : field(j, "pairing")) {
    if (!entry.is_array() || entry.size() != 3) throw FormatError("pairing entries are [id_a, id_b, n]");
    const ComponentId a = read_id(entry[0]);
    const ComponentId b = read_id(entry[1]);
    if (a == b) throw FormatError("pairing entry pairs a component with itself");
    const IdPair pair = IdPair::of(a, b);
    const Integer n = read_integer(entry[2], "intersection number");
    auto [it, inserted] = pairing.emplace(pair, n);
    if (!inserted && it->second != n) throw FormatError("asymmetric pairing for one component pair");
  }

  std::vector<CrossingPoint> points;
  if (j.contains("crossings")) {
    for (const Json& p : j.at("crossings")) {
      CrossingPoint point;
      for (const Json& id : field(p, "through")) point.through.push_back(read_id(id));
      std::sort(point.through.begin(), point.through.end());
      for (const Json& entry : field(p, "local")) {
        if (!entry.is_array() || entry.size() != 3) throw FormatError("local entries are [id_a, id_b, n]");
        point.local[IdPair::of(read_id(entry[0]), read_id(entry[1]))] =
            read_integer(entry[2], "local intersection number");
      }
      points.push_back(std::move(point));
    }
  }

  SpecialFiber fiber(*family, prime.get<std::int64_t>(), std::move(components), std::move(pairing),
                     std::move(points));
  try {
    SpecialFiber derived = derive_self_intersections(fiber);
    if (j.contains("self_intersections")) {
      for (const Json& entry : j.at("self_intersections")) {
        if (!entry.is_array() || entry.size() != 2) throw FormatError("self_intersections entries are [id, n]");
        const ComponentId id = read_id(entry[0]);
        if (!derived.find(id) || derived.self_intersection(id) != read_integer(entry[1], "self-intersection")) {
          throw FormatError("stored self-intersection disagrees with the zero-fiber rule");
        }
      }
    }
    return derived;
  } catch (const DivisibilityError&) {
    return fiber;
  }
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(decimal(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

IntMatrix matrix_from_json(const Json& j) {
  const Json& rows = field(j, "rows");
  const Json& cols = field(j, "cols");
  const Json& entries = field(j, "entries");
  if (!rows.is_number_unsigned() || !cols.is_number_unsigned()) {
    throw FormatError("'rows' and 'cols' must be non-negative integers");
  }
  const auto r = rows.get<std::size_t>();
  const auto c = cols.get<std::size_t>();
  if (!entries.is_array() || entries.size() != r) throw FormatError("'entries' must have 'rows' rows");
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!entries[i].is_array() || entries[i].size() != c) throw FormatError("row length differs from 'cols'");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = read_integer(entries[i][k], "matrix entry");
  }
  return m;
}

Json intersection_matrix_to_json(const SpecialFiber& fiber, const IntersectionMatrix& m) {
  Json j = matrix_to_json(m.entries);
  Json basis = Json::array();
  for (ComponentId id : m.basis) basis.push_back(fiber.at(id).label);
  j["basis"] = std::move(basis);
  j["family"] = fiber.family().name();
  j["prime"] = fiber.prime();
  return j;
}

Json group_to_json(const AbelianGroup& g) {
  Json factors = Json::array();
  for (const auto& f : g.invariant_factors()) factors.push_back(decimal(f));
  return {{"invariant_factors", std::move(factors)},
          {"free_rank", g.free_rank()},
          {"notation", g.to_string()}};
}

Json smith_to_json(const SmithDecomposition& snf) {
  Json diagonal = Json::array();
  for (const auto& d : snf.divisors()) diagonal.push_back(decimal(d));
  Json j = {{"diagonal", std::move(diagonal)}, {"rank", snf.rank()}};
  std::vector<Integer> nonzero;
  for (const auto& d : snf.divisors())
    if (d != 0) nonzero.push_back(d);
  j["cokernel"] = group_to_json(
      AbelianGroup::from_cyclic_orders(nonzero, snf.diagonal.rows() - snf.rank()));
  if (snf.left) j["left"] = matrix_to_json(*snf.left);
  if (snf.right) j["right"] = matrix_to_json(*snf.right);
  return j;
}

Json step_to_json(const ContractionStep& step) {
  Json pairs = Json::array();
  for (const auto& u : step.updated_pairs)
    pairs.push_back({u.a.value, u.b.value, decimal(u.before), decimal(u.after)});
  Json selfs = Json::array();
  for (const auto& u : step.updated_selfs) selfs.push_back({u.id.value, decimal(u.before), decimal(u.after)});
  Json smooth = Json::array();
  for (const auto& u : step.smoothness_changes) {
    smooth.push_back({u.id.value, std::string(to_string(u.before)), std::string(to_string(u.after))});
  }
  return {{"contracted_id", step.contracted_id.value},
          {"contracted_label", step.contracted_label},
          {"pre_self_intersection", decimal(step.pre_self_intersection)},
          {"updated_pairs", std::move(pairs)},
          {"updated_selfs", std::move(selfs)},
          {"smoothness_changes", std::move(smooth)}};
}

Json trace_to_json(const ContractionTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) steps.push_back(step_to_json(s));
  return {{"target", std::string(to_string(trace.target))},
          {"contracted", trace.contracted_labels()},
          {"initial", fiber_to_json(trace.initial)},
          {"steps", std::move(steps)},
          {"final", fiber_to_json(trace.final_fiber)}};
}

Json report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"check", c.check}, {"computed", c.computed}, {"expected", c.expected}, {"pass", c.pass}});
  }
  return {{"family", report.family.name()},
          {"prime", report.p},
          {"passed", report.passed()},
          {"checks", std::move(checks)}};
}

std::string fiber_to_dot(const SpecialFiber& fiber, std::string_view graph_name) {
  std::ostringstream out;
  out << "graph " << graph_name << " {\n";
  out << "  label=" << quoted(fiber.family().name() + " p=" + std::to_string(fiber.prime())) << ";\n";
  out << "  node [shape=box];\n";
  for (const auto& c : fiber.components()) {
    out << "  c" << c.id.value << " [label=" << quoted(c.label + " (" + to_decimal(c.multiplicity) + ")")
        << "];\n";
  }
  for (const auto& [pair, n] : fiber.pairing()) {
    if (n <= 0) continue;
    out << "  c" << pair.first.value << " -- c" << pair.second.value << " [label=" << quoted(to_decimal(n))
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string trace_to_dot(const ContractionTrace& trace) {
  std::string out = fiber_to_dot(trace.initial, "step_0");
  SpecialFiber current = trace.initial;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    current = contract_component(current, trace.steps[i].contracted_id).first;
    out += "// after contracting " + trace.steps[i].contracted_label + "\n";
    out += fiber_to_dot(current, "step_" + std::to_string(i + 1));
  }
  return out;
}

std::string matrix_to_table(const SpecialFiber& fiber, const IntersectionMatrix& m) {
  std::vector<std::string> labels;
  for (ComponentId id : m.basis) labels.push_back(fiber.at(id).label);
  std::size_t width = 1;
  for (const auto& l : labels) width = std::max(width, l.size());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) width = std::max(width, to_decimal(m.entries(i, j)).size());

  std::ostringstream out;
  out << std::setw(static_cast<int>(width)) << "";
  for (const auto& l : labels) out << ' ' << std::setw(static_cast<int>(width)) << l;
  out << '\n';
  for (std::size_t i = 0; i < m.order(); ++i) {
    out << std::setw(static_cast<int>(width)) << labels[i];
    for (std::size_t j = 0; j < m.order(); ++j)
      out << ' ' << std::setw(static_cast<int>(width)) << to_decimal(m.entries(i, j));
    out << '\n';
  }
  return out.str();
}

std::string fiber_to_table(const SpecialFiber& fiber) {
  std::ostringstream out;
  out << fiber.family().name() << " p=" << fiber.prime() << ", " << fiber.size() << (fiber.size() == 1 ? " component\n" : " components\n");
  out << std::left << std::setw(6) << "id" << std::setw(8) << "label" << std::setw(8) << "mult"
      << std::setw(18) << "kind" << std::setw(18) << "curve" << "self\n";
  for (const auto& c : fiber.components()) {
    out << std::setw(6) << c.id.value << std::setw(8) << c.label << std::setw(8) << to_decimal(c.multiplicity)
        << std::setw(18) << to_string(c.kind) << std::setw(18) << to_string(c.smoothness)
        << (fiber.self_intersections() ? to_decimal(fiber.self_intersection(c.id)) : "?") << '\n';
  }
  return out.str();
}

}  // namespace cartan::io
