#include "ecj/error.hpp"

namespace ecj {

const char* kind_name(Error::Kind kind) noexcept {
  switch (kind) {
    case Error::Kind::RegistryMismatch: return "RegistryMismatch";
    case Error::Kind::ZeroDenominator: return "ZeroDenominator";
    case Error::Kind::DivisionByZero: return "DivisionByZero";
    case Error::Kind::Infeasible: return "Infeasible";
    case Error::Kind::ResourceLimit: return "ResourceLimit";
    case Error::Kind::Pole: return "Pole";
    case Error::Kind::NotPrimeAssumed: return "NotPrimeAssumed";
    case Error::Kind::UnitIdeal: return "UnitIdeal";
    case Error::Kind::SingularLocus: return "SingularLocus";
    case Error::Kind::ConstantForced: return "ConstantForced";
    case Error::Kind::Parse: return "Parse";
    case Error::Kind::InvalidInput: return "InvalidInput";
    case Error::Kind::NoConstantCoordinate: return "NoConstantCoordinate";
    case Error::Kind::FiberEmpty: return "FiberEmpty";
    case Error::Kind::ModularRelationAbsent: return "ModularRelationAbsent";
    case Error::Kind::InsufficientOrder: return "InsufficientOrder";
    case Error::Kind::LevelUnavailable: return "LevelUnavailable";
    case Error::Kind::LiftSingular: return "LiftSingular";
    case Error::Kind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ecj
