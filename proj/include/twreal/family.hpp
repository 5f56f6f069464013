#pragma once

#include <string>
#include <string_view>

#include "twreal/error.hpp"
#include "twreal/linalg.hpp"
#include "twreal/triple.hpp"

namespace twreal {

/// The concrete Dirac families over the two-point algebra.
enum class FamilyId { c3_untwisted, c3_perm, c4_untwisted, c4_perm, c3_conformal, c4_conformal };

inline std::string to_string(FamilyId id) {
  switch (id) {
    case FamilyId::c3_untwisted: return "C3_untwisted";
    case FamilyId::c3_perm: return "C3_perm";
    case FamilyId::c4_untwisted: return "C4_untwisted";
    case FamilyId::c4_perm: return "C4_perm";
    case FamilyId::c3_conformal: return "C3_conformal";
    case FamilyId::c4_conformal: return "C4_conformal";
  }
  throw InvalidInput("unknown family id");
}

inline FamilyId family_from_string(std::string_view s) {
  for (auto id : {FamilyId::c3_untwisted, FamilyId::c3_perm, FamilyId::c4_untwisted, FamilyId::c4_perm,
                  FamilyId::c3_conformal, FamilyId::c4_conformal}) {
    if (to_string(id) == s) {
      return id;
    }
  }
  throw InvalidInput("unknown family '" + std::string(s) + "'");
}

inline bool is_c3(FamilyId id) {
  return id == FamilyId::c3_untwisted || id == FamilyId::c3_perm || id == FamilyId::c3_conformal;
}

/// Free parameters of a family member. For the conformal families d1, d2
/// are the parameters of the untwisted operator before rescaling. For
/// C3_untwisted and C3_conformal, d2 is the (0,1) slot and is fixed by
/// d1 (eps' d1*); it is ignored when building.
struct FamilyParams {
  FamilyId id = FamilyId::c3_untwisted;
  Sign eps_prime = Sign::plus;
  Complex d1 = 1.0;
  Complex d2 = 0.0;
  double zeta = 1.0;
  double rho = 0.5;
};

} // namespace twreal
