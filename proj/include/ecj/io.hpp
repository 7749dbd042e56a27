#pragma once

#include <string>
#include <string_view>

#include "ecj/engine.hpp"
#include "ecj/reductions.hpp"
#include "ecj/variety.hpp"

namespace ecj {

// Variety file:
//   variety
//   model=J|j|exp
//   n=<int>
//   base=Q|Q(t)|Q(t1,..,tm)
//   constants=<name>,...        optional
//   assume_prime=true|false     optional, default true
//   poly <expr>                 one per generator
// "#" starts a comment. Errors carry line and column.
Variety parse_variety(std::string_view text);
std::string serialize_variety(const Variety& V);

// Witness file:
//   witness
//   model=J|j|exp
//   n=<int>
//   base=...
//   constants=<name>,...        optional
//   derivations=<m>
//   field_poly <expr>           relations of the witness field, one per line
//   const <expr>                declared constants
//   delta <k> <coord> = <expr>  k is 1-based; missing entries are 0
//   lambda <k> = <expr>
//   flag verified=<bool>
//   flag all_nonconstant=<bool>
// For model j the field and its coordinates use the model J names.
DerivationWitness parse_witness(std::string_view text);
std::string serialize_witness(const DerivationWitness& w);

// Certificate file: "certificate", key=value lines, "note <text>" lines and
// "begin source|target|auxiliary" ... "end" sections holding variety files.
ReductionCertificate parse_certificate(std::string_view text);
std::string serialize_certificate(const ReductionCertificate& c);

std::string read_file(const std::string& path);

}  // namespace ecj
