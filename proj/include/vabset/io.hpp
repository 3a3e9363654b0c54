// SPDX-License-Identifier: Apache-2.0
//
// JSON definition files for groups, sets, automata and EDT0L systems.

#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "vabset/automata.hpp"
#include "vabset/polyhedral.hpp"
#include "vabset/semilinear.hpp"
#include "vabset/vabgroup.hpp"

namespace vabset {

/// Malformed definition file.
class ParseError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::ordered_json;

/// Integers are JSON numbers or decimal strings; big values are written as
/// strings.
Int int_from_json(const Json& j);
Json int_to_json(const Int& x);
IntVec vec_from_json(const Json& j);
Json vec_to_json(const IntVec& v);

VAGroup group_from_json(const Json& j);
Json group_to_json(const VAGroup& g);

PolyhedralSet polyhedral_from_json(const Json& j);
Json polyhedral_to_json(const PolyhedralSet& p);

SemilinearSet semilinear_from_json(const Json& j);
Json semilinear_to_json(const SemilinearSet& s);

/// Parts are keyed by transversal label; missing labels are empty.
CWPSet cwp_from_json(const Json& j, std::shared_ptr<const VAGroup> group);
Json cwp_to_json(const CWPSet& u);

NFsa nfsa_from_json(const Json& j);
Json nfsa_to_json(const NFsa& a);

EDT0LSystem edt0l_from_json(const Json& j);
Json edt0l_to_json(const EDT0LSystem& h);

/// Reads and parses a file; ParseError on I/O or syntax failure.
Json read_json_file(const std::string& path);
/// The "kind" tag of a definition file.
std::string json_kind(const Json& j);

}  // namespace vabset
