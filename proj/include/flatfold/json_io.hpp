#pragma once

#include <json.hpp>

#include "flatfold/intersect.hpp"
#include "flatfold/klein.hpp"

namespace flatfold {

// Insertion-ordered documents keep every serialization byte-stable.
using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings (plain "p" when integral); integer
// JSON numbers are accepted on input. Matrices are arrays of rows.
Json rat_to_json(const Rat& v);
Rat rat_from_json(const Json& j);
Json vec_to_json(const RatVec& v);
Json vec_to_json(const IntVec& v);
RatVec rat_vec_from_json(const Json& j);
Json mat_to_json(const RatMat& m);
Json mat_to_json(const IntMat& m);
RatMat rat_mat_from_json(const Json& j);
IntMat int_mat_from_json(const Json& j);

// Canonical group document: {"dim", "gram", "generators"} where the
// generators list every non-identity element (canonical element order)
// with its vector-system translation. Serializing a parsed document
// reproduces it byte for byte. Parsing accepts any generating set and an
// omitted gram (identity); unknown keys are ignored.
Json group_to_json(const CrystGroup& g);
CrystGroup group_from_json(const Json& j, std::size_t cap = kDefaultCloseCap);

// {"ambient_dim", "dim", "sat_basis"}; parsing also accepts
// {"generators": rows} and saturates them.
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json report_to_json(const CrystReport& r);
Json stabilizer_to_json(const StabilizerGroup& s, const CrystGroup& g);
Json leaf_sequence_to_json(const LeafSequence& s);
Json orbifold_to_json(const OrbifoldData& o);
Json decomposition_to_json(const Decomposition& d);
Json pair_report_to_json(const PairReport& r);
Json intersection_to_json(const IntersectionReport& r);
Json inclusion_to_json(const InclusionReport& r);
Json klein_to_json(const KleinFixture& fx);

// parse wrapped into Error("bad-json"); dump is two-space indented with a
// trailing newline.
Json parse_json_text(const std::string& text);
std::string dump_json(const Json& j);

}  // namespace flatfold
