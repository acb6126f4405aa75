#pragma once

#include "hda/algebra.hpp"
#include "hda/prop.hpp"

namespace hda {

// PROP from its spec_json form. Also accepts the names "T", "I" and "EBool".
PropPtr prop_from_spec(const json& j);

// Map specs:
//   {"kind":"identity","prop":P}
//   {"kind":"projection","product":P,"factor":0|1}
//   {"kind":"terminal","source":P,"target":Q}   (Q one point per profile)
PropMap map_from_spec(const json& j);

// Algebra specs:
//   table form of TableAlgebra::to_json, over "prop" or the given PROP
//   {"kind":"bool-or","prop":T}
//   {"kind":"tautological","prop":E_X}
//   {"kind":"derivative","map":M}                 (∂ of a PROP map)
AlgebraPtr algebra_from_spec(const json& j, const PropPtr& fallback = nullptr);

json read_json_file(const std::string& path);

}  // namespace hda
