#pragma once

#include <string>

#include "chu/char_table.hpp"
#include "chu/family.hpp"
#include "chu/rep.hpp"
#include "chu/witness.hpp"

#include "json.hpp"

namespace chu {

inline constexpr const char* kSchemaTag = "chu-lab/1";

nlohmann::json complex_to_json(const Complex& v);

nlohmann::json character_table_to_json(const CharacterTable& t);

/// Matrices keyed by element label; import validates the rep invariants.
nlohmann::json rep_to_json(const UnitaryRep& rep);
UnitaryRep rep_from_json(const nlohmann::json& j, const GroupTable& g);

nlohmann::json group_invariants_to_json(const GroupTable& g, const CharacterTable& t);

nlohmann::json classification_to_json(const ClassificationReport& rep);
nlohmann::json truncation_to_json(const TruncationReport& rep);
nlohmann::json collapse_to_json(const CollapseWitness& w);
nlohmann::json bohr_to_json(const BohrNullWitness& w);

/// Plain-text rendering derived from the JSON (no extra information).
std::string render_text(const nlohmann::json& j);

} // namespace chu
