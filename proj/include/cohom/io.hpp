#pragma once

#include "cohom/chainalg.hpp"

#include <string>

namespace cohom {

struct ParseError : Error {
    long line, col;
    ParseError(long line_, long col_, const std::string& what)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " +
                what),
          line(line_), col(col_) {}
};

// Canonical text formats.  print(parse(s)) == s for canonical s and
// parse(print(x)) reproduces x exactly.

std::string print_base_ring(const BaseRing& b);
BaseRing parse_base_ring(const std::string& s);

std::string print_algebra(const StructureAlgebra& A);
StructureAlgebra parse_algebra(const std::string& text);

// Bimodules are stored relative to an algebra file (the dimension is
// repeated for validation).
std::string print_bimodule(const Bimodule& M);
Bimodule parse_bimodule(const std::string& text, const StructureAlgebra& R);

std::string print_crossed_extension(const CrossedExtension& X);
CrossedExtension parse_crossed_extension(const std::string& text);

// FNV-1a 64-bit over the canonical printing; used as the resolution cache key.
std::string fingerprint(const std::string& canonical);

// Resolution cache: quasi-free resolutions stored by generators and
// generator differentials in the deterministic word-basis order.
std::string print_resolution(const KillingCyclesResult& res, const BaseRing& target,
                             const std::string& fingerprint_hex);
ChainAlgebra parse_resolution(const std::string& text);

// Disk cache helpers: path <dir>/<fingerprint>-<bound>.res
std::optional<ChainAlgebra> cache_load_resolution(const std::string& dir,
                                                  const std::string& fingerprint_hex, int bound);
void cache_store_resolution(const std::string& dir, const std::string& fingerprint_hex,
                            int bound, const KillingCyclesResult& res, const BaseRing& target);

}  // namespace cohom
