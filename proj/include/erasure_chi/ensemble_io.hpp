#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erasure_chi/states.hpp"

namespace erasure_chi {

/// An ensemble document: the ensemble plus any user-supplied per-letter pure
/// decompositions (index-aligned with the letters, absent where not given).
///
/// Wire format (UTF-8 JSON, matrices row-major):
///
///   {"dim": d,
///    "letters": [{"p": 0.5,
///                 "rho": [[{"re": 1, "im": 0}, ...], ...],
///                 "decomposition": [{"r": 1, "phi": [{"re": 1, "im": 0}, ...]}]},
///                ...]}
struct EnsembleFile {
  Ensemble ensemble;
  std::vector<std::optional<LetterDecomposition>> decompositions;
};

/// Throws ParseError (line/field diagnostics) or ValidationError.
EnsembleFile loadEnsembleFile(std::string_view text);
Ensemble loadEnsemble(std::string_view text);
EnsembleFile loadEnsembleFile(const std::filesystem::path& path);

/// Reads only the letters' states; "p" fields may be absent and are ignored.
std::vector<DensityMatrix> loadStates(std::string_view text);
std::vector<DensityMatrix> loadStates(const std::filesystem::path& path);

/// Serialises with 17 significant digits so that load(save(e)) is bit-exact.
std::string saveEnsemble(const EnsembleFile& file);
std::string saveEnsemble(const Ensemble& e);

}  // namespace erasure_chi
