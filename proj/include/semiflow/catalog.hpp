#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semiflow/flow.hpp"

namespace semiflow {

/// Catalog entry: a named generator plus, for the reference entries, the
/// closed-form flow that serves as its oracle.
struct CatalogEntry {
    std::string id;
    std::string description;
    GeneratorSpec spec;
    std::optional<ClosedFormId> oracle;
    Complex oracle_velocity{1.0, 0.0};  // translation speed when the oracle needs it
};

/// Built-in entries addressable from the CLI and test suites.
const std::vector<CatalogEntry>& generator_catalog();

/// Entry lookup by id; nullopt when unknown.
const CatalogEntry* find_catalog_entry(const std::string& id);

/// Parses a generator id:
///   bp:tau=<c>,p=<herglotz>     Berkson-Porta data on the disc
///   hp:const:<c>                constant half-plane generator
///   hp:sqrt                     sqrt half-plane generator
///   hp:dirichlet:c0=<c>[,a<n>=<c>...]   inline Dirichlet series
///   hp:dirichlet:file=<path>    coefficients from CSV (rows n,re[,im])
///   hp:log:<herglotz>           w -> p(exp(-w))
///   hp:cayley:<herglotz>        w -> 2 p((w-1)/(w+1))
/// with <herglotz> one of const:<c> | cayley:<k> | recip, and <c> a complex
/// literal like 1, -0.5, 1+2i, 0.3i. Throws std::invalid_argument on errors.
GeneratorSpec parse_generator_id(const std::string& id);

Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

}  // namespace semiflow
