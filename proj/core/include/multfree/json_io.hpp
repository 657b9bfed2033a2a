#pragma once

// JSON schemas for every value type. Parsers throw InputError carrying a JSON
// pointer to the offending node; constructor precondition failures raised
// while building a value are reported the same way, at the value's path.
//
// Rationals are strings "p/q" (integers are accepted on input). Group
// elements are referred to by name. Permutations are 1-based on the wire.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "multfree/cones.hpp"
#include "multfree/extsheaf.hpp"
#include "multfree/groupcoh.hpp"
#include "multfree/toricreps.hpp"

namespace multfree::io {

using Json = nlohmann::ordered_json;

Json parse_document(const std::string& text);

Rational parse_rational(const Json& j, const std::string& path);
IntegerVector parse_integer_vector(const Json& j, const std::string& path, std::size_t size);
RationalVector parse_rational_vector(const Json& j, const std::string& path, std::size_t size);
IntegerMatrix parse_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols);

// A builtin name ("trivial", "Z<n>", "Z<a>xZ<b>", "signs<k>") or
// {"elements": [names], "table": [[indices or names]]}.
FiniteGroup parse_group(const Json& j, const std::string& path);
std::size_t parse_element(const Json& j, const std::string& path, const FiniteGroup& g);

// {"group", "rank", "matrices": {elem: [[ints]]}}; missing matrices mean the
// trivial action.
LatticeModule parse_module(const Json& j, const std::string& path);
// {"module", "kappa": {g: {h: [rationals]}}}; omitted kappa entries are 0.
ExtensionData parse_extension(const Json& j, const std::string& path);
// {elem: [rationals]}; omitted elements are 0.
std::vector<RationalVector> parse_gamma_table(const Json& j, const std::string& path, const LatticeModule& m);
ConeData parse_cone(const Json& j, const std::string& path);
PolytopeData parse_polytope(const Json& j, const std::string& path);
LatticeGroupAction parse_action(const Json& j, const std::string& path);
ToricRepData parse_rep(const Json& j, const std::string& path);
// {"extension" | "module" (+ "kappa"), "strata": [{"id", "isotropy": [elems]}],
//  "adjacencies": [["deep", "shallow"]]}
StratifiedIsotropyDiagram parse_diagram(const Json& j, const std::string& path);

Json to_json(const Rational& q);
Json to_json(const IntegerVector& v);
Json to_json(const RationalVector& v);
// Integral entries as numbers, others as "p/q".
Json to_json_point(const RationalVector& v);
Json to_json(const IntegerMatrix& m);
Json to_json(const FiniteGroup& g);
Json to_json(const LatticeModule& m);
Json to_json(const ExtensionData& e);
Json gamma_table_json(const FiniteGroup& g, const std::vector<RationalVector>& values);
Json cochain_json(const FiniteGroup& g, const Cochain& c);
Json to_json(const ExtClass& c);
Json to_json(const ConeData& c);
Json to_json(const PolytopeData& p);
Json to_json(const ToricRepData& r);
Json to_json(const StratifiedIsotropyDiagram& d);
Json section_json(const StratifiedIsotropyDiagram& d, const FlatSection& s);

}  // namespace multfree::io
