#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cubeknot/moves.hpp"

namespace cubeknot {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Cell list format, one complex per file:
///
///   cubeknot <k> <n> <scale>
///   cell <x1> ... <xn> : <a1> ... <ak>
///
/// '#' starts a comment; blank lines are ignored. Serialization is canonical
/// (cells sorted), so serialize(parse(text)) is byte-stable.
std::string to_text(const CellComplex& complex);
CellComplex parse_cells(std::istream& in);
CellComplex parse_cells(const std::string& text);

/// Certificate format: a "cubeknot-cert" header, the initial diagram inline,
/// one step per line ("m1 <m>" or "m2 <carrier> | removed: ... | inserted:
/// ..."), and a trailing "digest sha256:<hex>".
std::string to_text(const MoveSequence& seq);
MoveSequence parse_certificate(std::istream& in);
MoveSequence parse_certificate(const std::string& text);

}  // namespace cubeknot
