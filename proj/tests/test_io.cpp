#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "projrep/fixtures.hpp"
#include "projrep/io.hpp"

using namespace projrep;

namespace {

const std::string kCorpus = PROJREP_CORPUS;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::UnknownCommand;
}

}  // namespace

TEST(Io, MinimalGroupFile) {
  const FiniteGroup g = io::load_group(kCorpus + "/z2-group.json");
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(g.mul(1, 1), 0u);
}

TEST(Io, PauliFileMatchesFixture) {
  const RayRepresentation rep = io::load_rep(kCorpus + "/pauli-z2z2.json");
  const RayRepresentation ref = fixtures::pauli_z2z2();
  ASSERT_EQ(rep.order(), 4u);
  for (ElementId r = 0; r < 4; ++r) EXPECT_LE(max_abs(rep.matrix(r) - ref.matrix(r)), 1e-15);
}

TEST(Io, EveryRepInCorpusLoads) {
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kCorpus)) {
    const nlohmann::json j = io::read_json(entry.path().string());
    if (!j.contains("matrices")) continue;
    EXPECT_NO_THROW(io::rep_from_json(j)) << entry.path();
    ++n;
  }
  EXPECT_GE(n, 15u);
}

TEST(Io, NonUnitaryMatrixIsValidationErrorNamingElement) {
  nlohmann::json j = io::rep_to_json(fixtures::twisted_z2());
  j["matrices"][1][0][0] = {2.0, 0.0};
  try {
    io::rep_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_EQ(e.witness().value("kind", ""), "NotUnitary");
    EXPECT_EQ(e.witness().value("element", -1), 1);
  }
}

TEST(Io, NotScalarBecomesValidationError) {
  nlohmann::json j = io::rep_to_json(fixtures::pauli_z2z2());
  // Swap U_(0,1) = Z for the identity-like diag(1, i): no longer projective.
  j["matrices"][1] = io::matrix_to_json((CMatrix(2, 2) << 1.0, 0.0, 0.0, Complex(0, 1)).finished());
  try {
    io::rep_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_EQ(e.witness().value("kind", ""), "NotScalar");
  }
}

TEST(Io, ParseErrorCarriesLine) {
  try {
    io::parse_text("{\n  \"order\": 2,\n  \"table\": [[0, 1], [1 0]]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_EQ(e.witness().value("line", 0), 3);
  }
  EXPECT_EQ(kind_of([] { io::read_json("/nonexistent/file.json"); }), ErrorKind::ParseError);
}

TEST(Io, SchemaErrors) {
  EXPECT_EQ(kind_of([] { io::group_from_json(nlohmann::json{{"table", {{0}}}}); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::group_from_json(nlohmann::json{{"order", 3}, {"table", {{0, 1}, {1, 0}}}}); }),
            ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { io::group_from_json(nlohmann::json{{"order", 2}, {"table", {{0, 1}, {1, 1}}}}); }),
            ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { io::matrix_from_json(nlohmann::json{{{1.0}}}, "m"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::phase_from_json(nlohmann::json{{"num", 1}, {"den", 0}}, "p"); }), ErrorKind::ParseError);
}

TEST(Io, RelabelledIdentityKeepsMatrices) {
  // Z2 with identity labelled 1: matrix list follows the file's labels.
  const nlohmann::json j = {{"group", {{"order", 2}, {"table", {{1, 0}, {0, 1}}}}},
                            {"dim", 1},
                            {"matrices", {{{{-1.0, 0.0}}}, {{{1.0, 0.0}}}}}};
  const RayRepresentation rep = io::rep_from_json(j);
  EXPECT_EQ(rep.matrix(0)(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(rep.matrix(1)(0, 0), Complex(-1.0, 0.0));
}

TEST(Io, ExponentRoundTrip) {
  const ExponentTable d = io::load_exponent(kCorpus + "/twisted-z2-exponent.json");
  ASSERT_TRUE(d.exact());
  EXPECT_EQ(d.at(1, 1).turns(), Rational(1, 2));
  const ExponentTable back = io::exponent_from_json(io::exponent_to_json(d));
  EXPECT_EQ(back.at(1, 1).turns(), Rational(1, 2));
  EXPECT_NEAR(io::phase_from_json(nlohmann::json(1.5), "p").principal(), 1.5, 1e-15);
}

TEST(Io, ExponentInvariantViolation) {
  nlohmann::json j = io::exponent_to_json(ExponentTable::zero(make_cyclic(2)));
  j["exponents"][1][0] = {{"num", 1}, {"den", 4}};
  EXPECT_EQ(kind_of([&] { io::exponent_from_json(j); }), ErrorKind::ValidationError);
}

TEST(Io, RepRoundTripIsExact) {
  const RayRepresentation rep = fixtures::q8_su2();
  const std::string path = (std::filesystem::temp_directory_path() / "projrep_io_roundtrip.json").string();
  io::write_json(path, io::rep_to_json(rep));
  const RayRepresentation back = io::load_rep(path);
  std::remove(path.c_str());
  for (ElementId r = 0; r < rep.order(); ++r) EXPECT_EQ(back.matrix(r), rep.matrix(r));
}

TEST(Io, MatrixFile) {
  const CMatrix m = io::load_matrix(kCorpus + "/random-u8.json");
  EXPECT_EQ(m.rows(), 8);
  EXPECT_TRUE(is_unitary(m));
}
