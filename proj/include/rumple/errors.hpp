#pragma once

#include <stdexcept>
#include <string>

namespace rumple {

enum class errc {
  dimension_mismatch,
  entry_out_of_range,
  not_left_quasigroup,
  not_quasigroup,
  no_square_root,
  not_rumple,
  not_latin_rumple,
  not_both_sided,
  not_a_group,
  not_rack,
  cap_exceeded,
  not_subgroup,
  not_left_nondegenerate,
  not_birack,
  incompatible_matrix,
  not_invertible,
  bound_exceeded,
  char_mismatch,
  singular_b,
  rump_condition_fails,
  not_elementary_abelian,
  invalid_extension,
  base_not_affine_latin,
  node_cap_exceeded,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::entry_out_of_range: return "EntryOutOfRange";
    case errc::not_left_quasigroup: return "NotLeftQuasigroup";
    case errc::not_quasigroup: return "NotQuasigroup";
    case errc::no_square_root: return "NoSquareRoot";
    case errc::not_rumple: return "NotRumple";
    case errc::not_latin_rumple: return "NotLatinRumple";
    case errc::not_both_sided: return "NotBothSided";
    case errc::not_a_group: return "NotAGroup";
    case errc::not_rack: return "NotRack";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::not_subgroup: return "NotSubgroup";
    case errc::not_left_nondegenerate: return "NotLeftNondegenerate";
    case errc::not_birack: return "NotBirack";
    case errc::incompatible_matrix: return "IncompatibleMatrix";
    case errc::not_invertible: return "NotInvertible";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::char_mismatch: return "CharMismatch";
    case errc::singular_b: return "SingularB";
    case errc::rump_condition_fails: return "RumpConditionFails";
    case errc::not_elementary_abelian: return "NotElementaryAbelian";
    case errc::invalid_extension: return "InvalidExtension";
    case errc::base_not_affine_latin: return "BaseNotAffineLatin";
    case errc::node_cap_exceeded: return "NodeCapExceeded";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

struct error : std::runtime_error {
  errc code;
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace rumple
