#pragma once

#include <string>
#include <vector>

#include "psh/config.hpp"
#include "psh/harmonics.hpp"
#include "psh/report.hpp"

namespace psh {

/// "padic-p3-n2-M2", "laurent-p2f2-n2-M2".
std::string tag_of(const RingLevel& ring, int n);
std::string character_tag(const UnitCharacter& chi);

/// Sphere size, chi-level dimensions (numeric, exact, closed form), harmonic
/// dimensions, completeness and mutual orthogonality.
void suite_decompose(Report& rep, const Harmonics& h);
/// Commutant dimensions of every H_{chi,m} and every chi-level space.
void suite_irreducibility(Report& rep, const Harmonics& h);
/// Zonal norm, shell values against the mirabolic-invariant line, symmetry,
/// addition theorem and reproducing kernel.
void suite_zonal(Report& rep, const Harmonics& h, int samples);
/// Idempotent sums over all of K (samples = 0) or over random k.
void suite_idempotents(Report& rep, const Harmonics& h, int samples);
/// Double-coset partition against brute force, and witnesses, over all of K.
void suite_double_cosets(Report& rep, const GL& gl, int m, std::uint64_t budget);
/// Conductor, invariant and graded dimensions, newform, matrix coefficients,
/// twist-minimality for the model induced from `chis`.
void suite_principal_series(Report& rep, const Harmonics& h, const std::vector<UnitCharacter>& chis, int samples);
/// Vector from harmonic: route agreement (if exhaustive), P° gives v°,
/// isotypic span, the matrix-coefficient identity, and central mismatch.
void suite_roundtrip(Report& rep, const Harmonics& h, const std::vector<UnitCharacter>& chis, bool exhaustive,
                     int samples);
/// Exact archimedean checks up to the given bounds.
void suite_arch(Report& rep, const ArchBounds& b, int samples);

/// Characters of `h` picked by selectors; throws ConfigError if one is missing.
std::vector<UnitCharacter> select_characters(const Harmonics& h, const std::vector<CharacterSelector>& sel);

}  // namespace psh
