#pragma once

#include <stdexcept>
#include <string>

#include "ssrent/fock.hpp"

namespace ssrent {

/// Syntax or validation error with 1-based source position.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) +
                             ", column " + std::to_string(column)),
          line(line), column(column) {}

    int line;
    int column;
};

struct ParsedState {
    PureState state;     // normalized
    double original_norm; // norm of the literal expression before normalizing
};

/// Parses a bra-ket expression:
///
///   expr     := term (('+'|'-') term)*
///   term     := scalar? factor (('*'|'x') factor)*
///   factor   := ket | '(' expr ')'
///   ket      := '|' occ_list ';' occ_list '>'
///   occ_list := int (',' int)*
///   scalar   := rational | rational '/sqrt' int | decimal
///
/// Alice occupations precede ';'.  All literal kets in one expression must
/// share mode counts; '*' / 'x' is the party-wise tensor product.
/// Throws ParseError (with position) on syntax errors, mode-count mismatch,
/// or a cancelled-to-zero state.
ParsedState parse_state(const std::string& text);

/// Canonical text form: terms in label order, global phase fixed so the
/// first amplitude is positive real, coefficients at 12 significant digits.
/// Reparsing yields an amplitude-identical state.  Throws DomainError for
/// states with amplitudes that are not real after dephasing (the grammar has
/// no complex scalars).
std::string render_state(const PureState& psi);

} // namespace ssrent
