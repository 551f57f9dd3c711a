#pragma once

#include "cartan/contraction.hpp"
#include "cartan/fiber.hpp"
#include "cartan/formulas.hpp"
#include "cartan/intlinalg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cartan::io {

using Json = nlohmann::json;

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

Json fiber_to_json(const SpecialFiber& fiber);
/// Throws FormatError. Self-intersections are derived when possible.
SpecialFiber fiber_from_json(const Json& j);

/// {"rows": n, "cols": m, "entries": [["1", "-2"], ...]}
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json intersection_matrix_to_json(const SpecialFiber& fiber, const IntersectionMatrix& m);

Json group_to_json(const AbelianGroup& g);
Json smith_to_json(const SmithDecomposition& snf);
Json step_to_json(const ContractionStep& step);
Json trace_to_json(const ContractionTrace& trace);
Json report_to_json(const VerificationReport& report);

std::string fiber_to_dot(const SpecialFiber& fiber, std::string_view graph_name = "fiber");
/// One graph per stage: the initial fiber, then the fiber after each step.
std::string trace_to_dot(const ContractionTrace& trace);

/// Plain-text grid with a label header.
std::string matrix_to_table(const SpecialFiber& fiber, const IntersectionMatrix& m);
std::string fiber_to_table(const SpecialFiber& fiber);

}  // namespace cartan::io
