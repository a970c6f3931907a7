#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "erasure_chi/ensemble_io.hpp"

using namespace erasure_chi;

namespace {

std::filesystem::path fixture(const char* name) { return std::filesystem::path(FIXTURE_DIR) / name; }

std::string invariantOf(const std::filesystem::path& p) {
  try {
    loadEnsembleFile(p);
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  return "none";
}

}  // namespace

TEST(EnsembleIo, RoundTripIsBitExact) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Eigen::Index dim = 1 + t % 6;
    const Ensemble e = randomEnsemble(dim, 1 + t % 5, dim, RngStream(21).split(t));
    const Ensemble back = loadEnsemble(saveEnsemble(e));
    ASSERT_EQ(back.size(), e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_EQ(back.members()[i].probability, e.members()[i].probability);
      EXPECT_EQ(back.members()[i].state.matrix(), e.members()[i].state.matrix()) << "trial " << t;
    }
    EXPECT_EQ(saveEnsemble(back), saveEnsemble(e));
  }
}

TEST(EnsembleIo, RoundTripKeepsDecompositions) {
  const EnsembleFile f = loadEnsembleFile(fixture("with_decomposition.json"));
  ASSERT_EQ(f.decompositions.size(), 2u);
  ASSERT_TRUE(f.decompositions[0].has_value());
  EXPECT_FALSE(f.decompositions[1].has_value());
  EXPECT_EQ(f.decompositions[0]->size(), 2u);
  const EnsembleFile back = loadEnsembleFile(std::string_view(saveEnsemble(f)));
  ASSERT_TRUE(back.decompositions[0].has_value());
  EXPECT_EQ((*back.decompositions[0])[1].state.amplitudes(), (*f.decompositions[0])[1].state.amplitudes());
}

TEST(EnsembleIo, LoadsFixtures) {
  const Ensemble e = loadEnsembleFile(fixture("zero_plus.json")).ensemble;
  EXPECT_EQ(e.size(), 2u);
  EXPECT_EQ(e.dim(), 2);
  EXPECT_EQ(loadEnsembleFile(fixture("pure_letters.json")).ensemble.dim(), 3);
}

TEST(EnsembleIo, ProbabilitiesSummingToPointNine) {
  EXPECT_EQ(invariantOf(fixture("corrupted_probabilities.json")), "probabilities");
}

TEST(EnsembleIo, NonHermitianEntry) { EXPECT_EQ(invariantOf(fixture("non_hermitian.json")), "hermiticity"); }

TEST(EnsembleIo, SyntaxErrorReportsLine) {
  try {
    loadEnsembleFile(fixture("malformed.json"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.where().find("line 3"), std::string::npos) << e.where();
  }
}

TEST(EnsembleIo, FieldErrorsNameTheField) {
  try {
    loadEnsemble(R"({"dim": 2, "letters": [{"p": 1, "rho": [[{"re": 1, "im": 0}, {"re": 0}],
                                                             [{"re": 0, "im": 0}, {"re": 0, "im": 0}]]}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "$.letters[0].rho[0][1].im");
  }
  EXPECT_THROW(loadEnsemble(R"({"letters": []})"), ParseError);
  EXPECT_THROW(loadEnsemble(R"({"dim": 2, "letters": [{"p": 1, "rho": [[{"re": 1, "im": 0}]]}]})"), ParseError);
}

TEST(EnsembleIo, MissingFileIsParseError) {
  EXPECT_THROW(loadEnsembleFile(fixture("does_not_exist.json")), ParseError);
}

TEST(EnsembleIo, BadDecompositionIsRejected) {
  const char* text = R"({"dim": 2, "letters": [{"p": 1,
      "rho": [[{"re": 0.5, "im": 0}, {"re": 0, "im": 0}], [{"re": 0, "im": 0}, {"re": 0.5, "im": 0}]],
      "decomposition": [{"r": 1, "phi": [{"re": 1, "im": 0}, {"re": 0, "im": 0}]}]}]})";
  try {
    loadEnsembleFile(std::string_view(text));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "decomposition");
  }
}

TEST(EnsembleIo, StatesIgnoreProbabilities) {
  const auto states = loadStates(fixture("capacity_states.json"));
  ASSERT_EQ(states.size(), 2u);
  EXPECT_EQ(states[1].matrix()(0, 1), Complex(0.5, 0.0));
  EXPECT_EQ(loadStates(fixture("corrupted_probabilities.json")).size(), 2u);
}
