#include <gtest/gtest.h>

#include "classnum/corpus.hpp"

using namespace classnum;

namespace {

ParseError parse_error_of(const std::string& text) {
  try {
    parse_corpus_string(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError("", 0, "");
}

const char* kHyp = "name: c\np: 2\ngenus: 2\nmodel: hyperelliptic\nf: [0, 0, 0, 0, 0, 1]\nh: [1]\n";

}  // namespace

TEST(Corpus, ShippedFileLoads) {
  const auto curves = load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml");
  EXPECT_GE(curves.size(), 12u);
  std::set<unsigned> genera;
  std::set<std::uint64_t> fields;
  for (const auto& c : curves) {
    genera.insert(c.genus);
    fields.insert(c.field.q);
  }
  for (unsigned g = 2; g <= 5; ++g) EXPECT_TRUE(genera.count(g)) << g;
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9}) EXPECT_TRUE(fields.count(q)) << q;
}

TEST(Corpus, EmptyStream) {
  EXPECT_TRUE(parse_corpus_string("").empty());
  EXPECT_TRUE(parse_corpus_string("# nothing\n").empty());
}

TEST(Corpus, ModelsParse) {
  const auto c = parse_corpus_string(kHyp);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].field.q, 2u);
  EXPECT_EQ(std::get<Hyperelliptic>(c[0].model).h, fq::Poly{1});
  const auto d = parse_corpus_string("name: d\np: 3\ngenus: 2\nmodel: direct\nN: [4, 10]\n");
  EXPECT_EQ(std::get<DirectSpectrum>(d[0].model).N, (std::vector<Integer>{4, 10}));
  const auto k = parse_corpus_string(
      "name: klein\np: 2\ngenus: 3\nmodel: plane\nF: [[1, 3, 1, 0], [1, 0, 3, 1], [1, 1, 0, 3]]\n");
  EXPECT_EQ(std::get<SmoothPlane>(k[0].model).terms.size(), 3u);
}

TEST(Corpus, DigitListCoefficients) {
  const auto c = parse_corpus_string(
      "name: e\np: 3\nk: 2\ngenus: 2\nmodel: hyperelliptic\nf: [[0, 1], 0, 0, 0, 0, 1]\n");
  const GaloisField F(c[0].field);
  EXPECT_EQ(std::get<Hyperelliptic>(c[0].model).f[0], F.from_digits({0, 1}));
  EXPECT_EQ(c[0].field.q, 9u);
}

TEST(Corpus, ErrorsCarryLineAndField) {
  auto e = parse_error_of(std::string(kHyp) + "colour: red\n");
  EXPECT_EQ(e.field(), "colour");
  EXPECT_EQ(e.line(), 7);

  e = parse_error_of("name: c\np: 2\nmodel: direct\nN: [3, 5]\n");
  EXPECT_EQ(e.field(), "genus");

  e = parse_error_of("name: c\np: 2\ngenus: 2\nmodel: direct\nN: [3, x]\n");
  EXPECT_EQ(e.field(), "N");
  EXPECT_EQ(e.line(), 5);

  e = parse_error_of("name: c\np: 6\ngenus: 2\nmodel: direct\nN: [3, 5]\n");
  EXPECT_EQ(e.field(), "p");
  EXPECT_EQ(e.line(), 2);

  e = parse_error_of("name: c\np: 2\ngenus: 1\nmodel: direct\nN: [3]\n");
  EXPECT_EQ(e.field(), "genus");

  e = parse_error_of("name: c\np: 2\ngenus: 2\nmodel: quartic\n");
  EXPECT_EQ(e.field(), "model");
  EXPECT_EQ(e.line(), 4);

  e = parse_error_of("name: c\np: 2\ngenus: 2\nmodel: direct\nN: [3]\n");
  EXPECT_EQ(e.field(), "model");

  e = parse_error_of("name: c\np: 2\ngenus: 2\nmodel: plane\nF: [[1, 3, 1]]\n");
  EXPECT_EQ(e.field(), "F");

  e = parse_error_of("name: [c\n");
  EXPECT_GE(e.line(), 1);
}

TEST(Corpus, DuplicateNames) {
  const auto e = parse_error_of(std::string(kHyp) + "---\n" + kHyp);
  EXPECT_EQ(e.field(), "name");
  EXPECT_EQ(e.line(), 8);
}

TEST(Corpus, MissingFile) {
  EXPECT_THROW(load_corpus(CLASSNUM_DATA_DIR "/no_such_corpus.yaml"), InputError);
}

TEST(Corpus, CanonicalFormIsStable) {
  const auto a = load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml");
  const auto b = load_corpus(CLASSNUM_DATA_DIR "/corpus.yaml");
  ASSERT_EQ(a.size(), b.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(canonical(a[i]), canonical(b[i]));
    EXPECT_TRUE(seen.insert(canonical(a[i])).second);
  }
  // comments and key order do not matter
  const auto c = parse_corpus_string("# x\nmodel: hyperelliptic\nh: [1]\nf: [0, 0, 0, 0, 0, 1]\ngenus: 2\np: 2\nname: c\n");
  EXPECT_EQ(canonical(c[0]), canonical(parse_corpus_string(kHyp)[0]));
}
