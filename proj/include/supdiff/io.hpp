#pragma once

#include <string>

#include "json.hpp"
#include "supdiff/duality.hpp"
#include "supdiff/sip.hpp"

namespace supdiff {

using Json = nlohmann::ordered_json;

/**
 * Contents of a problem-spec file.  Every rational in the file is a "p/q"
 * string (plain integers are accepted too); floats are rejected so exactness
 * survives serialization.  Top-level keys: "dim", "family", "objective",
 * "discrete", "meta".  meta is carried through unexamined.
 */
struct ProblemSpec {
  Eigen::Index dim = 0;
  std::optional<IndexedFamily> family;
  std::optional<PolyFunc> objective;
  std::optional<DiscreteFunc> discrete;
  Json meta;
};

/*
 * Serializers.  Polyhedra are emitted as their canonical V-rep, whose
 * generator lists the kernel keeps sorted, so identical sets serialize to
 * identical bytes.
 */
Json json_rat(const Rat& q);
Json json_vec(const VecQ& v);
Json json_poly(const Polyhedron& p);
Json json_active(const ActiveSet& a);
Json json_trace(const std::vector<TraceStep>& steps);
Json json_subdiff(const SubdiffResult& r);
Json json_certificate(const Certificate& c);
Json json_grid_delta(const GridDelta& d);

/*
 * Parsers.  `where` names the position inside the document and prefixes
 * every parse_error message.
 */
Rat rat_from(const Json& j, const std::string& where);
/** dim < 0 accepts any length. */
VecQ vec_from(const Json& j, Eigen::Index dim, const std::string& where);
HRep hrep_from(const Json& j, Eigen::Index dim, const std::string& where);
Polyhedron poly_from(const Json& j, const std::string& where);
PolyFunc polyfunc_from(const Json& j, Eigen::Index dim,
                       const std::string& where);
IndexedFamily family_from(const Json& j, Eigen::Index dim,
                          const std::string& where);
DiscreteFunc discrete_from(const Json& j, Eigen::Index dim,
                           const std::string& where);
ProblemSpec spec_from(const Json& j);
ProblemSpec load_spec(const std::string& path);

/**
 * Deterministic plain-text rendering of a report: one row per flattened
 * key, nested keys joined with dots, array elements indexed.  Emitted next
 * to every JSON report so the golden files pin both shapes.
 */
std::string render_text(const Json& report);

}  // namespace supdiff
