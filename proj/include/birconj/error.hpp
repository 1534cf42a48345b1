#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace birconj {

enum class Errc {
  ParseError,
  UnknownVariable,
  NotRepresentable,
  FieldMismatch,
  NoEmbedding,
  InvalidField,
  NotHomogeneous,
  DegreeMismatch,
  CommonFactor,
  NotDominant,
  NotRegular,
  ZeroTriple,
  InvalidInverse,
  InverseRequired,
  NotRegularOnChart,
  NotInClassification,
  NotConjugate,
  NotJonquieres,
  NotMonomial,
  NotInvertible,
  ZeroPolynomial,
  TheoremViolation,
  NoDthRoot,
  CharDividesD,
  RelationViolated,
  UnexpectedM,
  DegreeTooSmall,
  DegreeBoundViolated,
  UniquenessFailed,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library. `position()` is meaningful for
/// parse errors only (byte offset into the input).
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what, std::size_t position = 0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code),
        position_(position) {}

  Errc code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

private:
  Errc code_;
  std::size_t position_;
};

}  // namespace birconj
