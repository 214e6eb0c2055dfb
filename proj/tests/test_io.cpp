#include <gtest/gtest.h>

#include "nash/campaign.hpp"
#include "nash/error.hpp"
#include "nash/io.hpp"

using namespace nash;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST(Io, ParseComplexLiterals) {
  EXPECT_EQ(parse_complex("1"), cd(1.0, 0.0));
  EXPECT_EQ(parse_complex("-2.5i"), cd(0.0, -2.5));
  EXPECT_EQ(parse_complex("i"), cd(0.0, 1.0));
  EXPECT_EQ(parse_complex("-i"), cd(0.0, -1.0));
  EXPECT_EQ(parse_complex("3-4i"), cd(3.0, -4.0));
  EXPECT_EQ(parse_complex("1e-3+2e-2i"), cd(1e-3, 2e-2));
  EXPECT_EQ(parse_complex("1+0i"), cd(1.0, 0.0));
  EXPECT_EQ(parse_complex(" +2 "), cd(2.0, 0.0));
  for (const char* bad : {"", "abc", "1+", "1+2j", "nan", "inf", "1..2"})
    EXPECT_EQ(code_of([&] { parse_complex(bad); }), Errc::ParseError) << bad;
}

TEST(Io, FormatComplexRoundTrips) {
  for (cd z : {cd{0.1, -0.3}, cd{-1e-300, 5e300}, cd{1.0 / 3.0, 2.0 / 7.0}, cd{0.0, 0.0}})
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  EXPECT_EQ(format_complex(cd{1.0, -2.0}), "1-2i");
}

TEST(Io, PolyJsonRoundTrip) {
  const BivarPoly s{{0, 2, cd{1.0, 0.5}}, {1, 0, -1.0}, {2, 1, cd{0.0, 3.0}}};
  const BivarPoly back = parse_poly_json(poly_to_json(s));
  EXPECT_EQ(back.flat(), s.flat());
  EXPECT_EQ(back.deg_total(), 3);
  // Real numbers and complex strings are accepted as coefficients.
  const BivarPoly t = parse_poly_json(R"({"coeffs": [[0, "1+2i"], [-1, 0]]})");
  EXPECT_EQ(t.coeff(0, 1), cd(1.0, 2.0));
  EXPECT_EQ(t.coeff(1, 0), cd(-1.0, 0.0));
}

TEST(Io, PolyJsonRejectsMalformed) {
  for (const char* bad : {R"({"coeffs": [[1, 2], [3]]})", R"({"coeffs": []})", R"({"k": 1})", R"([1, 2])",
                          R"({"coeffs": [[[1, 2, 3]]]})", R"({"coeffs": [["nan"]]})", R"({"coeffs": [[1e999]]})",
                          R"({"k": 1, "coeffs": [[0, 0, 1]]})", R"({"k": 1.5, "coeffs": [[1]]})", "{not json"})
    EXPECT_EQ(code_of([&] { parse_poly_json(bad); }), Errc::ParseError) << bad;
}

TEST(Io, PathJson) {
  const std::vector<cd> pts{cd{0.0, 0.0}, cd{1.0, -1.0}, cd{0.5, 2.0}};
  EXPECT_EQ(parse_path_json(path_to_json(pts)), pts);
  EXPECT_EQ(code_of([] { parse_path_json(R"({"points": []})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_path_json(R"({"pts": [[0, 0]]})"); }), Errc::ParseError);
}

TEST(Io, CompactSpecs) {
  const CompactSpec d = parse_compact("disk:0.1+0.2i:0.5:128");
  EXPECT_EQ(d.kind, CompactSpec::Kind::ClosedDisk);
  EXPECT_EQ(d.center, cd(0.1, 0.2));
  EXPECT_EQ(d.radius, 0.5);
  EXPECT_EQ(d.samples, 128);
  EXPECT_EQ(parse_compact("disk:0:0.5").samples, 512);

  const CompactSpec s = parse_compact("segment:-1:1i");
  EXPECT_EQ(s.kind, CompactSpec::Kind::Segment);
  EXPECT_EQ(s.b, cd(0.0, 1.0));

  const CompactSpec p = parse_compact("points:0.1,0.2-1i,i");
  EXPECT_EQ(p.kind, CompactSpec::Kind::FinitePoints);
  EXPECT_EQ(p.points.size(), 3u);
  EXPECT_EQ(p.points[2], cd(0.0, 1.0));

  for (const char* text : {"disk:0.1+0.2i:0.5:128", "segment:-1+0i:0+1i:64", "points:0.1+0i,0.2-1i"})
    EXPECT_EQ(format_compact(parse_compact(format_compact(parse_compact(text)))),
              format_compact(parse_compact(text)));

  for (const char* bad : {"disk:0", "circle:0:1", "disk:0:-1", "disk:0:1:0", "disk:0:1:2.5", "points:"})
    EXPECT_EQ(code_of([&] { parse_compact(bad); }), Errc::ParseError) << bad;
}

TEST(Io, DomainSpecs) {
  const DomainSpec d = parse_domain("disk:0:1:256");
  EXPECT_EQ(d.radius, 1.0);
  EXPECT_EQ(d.boundary_samples, 256);
  EXPECT_EQ(parse_domain(format_domain(d)).boundary_samples, 256);
  EXPECT_EQ(code_of([] { parse_domain("segment:0:1"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_domain("disk:0:0"); }), Errc::ParseError);
}

TEST(Io, RealCoeffs) {
  const UnivarPoly p = parse_real_coeffs("0,1,-2.5");
  EXPECT_EQ(p.formal_degree(), 2);
  EXPECT_EQ(p[2], cd(-2.5, 0.0));
  EXPECT_EQ(code_of([] { parse_real_coeffs("1,2i"); }), Errc::ParseError);
}

TEST(Io, ConfigRoundTrip) {
  CampaignConfig cfg;
  cfg.k = 3;
  cfg.rho = 0.8;
  cfg.K = CompactSpec::finite({0.1, 0.2, cd{0.0, 0.1}, -0.1});
  cfg.omega = DomainSpec{cd{0.0}, 0.6, 256};
  cfg.n_samples = 17;
  cfg.seed = 0xFFFFFFFFFFFFFFFFull;
  cfg.tol.seq_tol = 3e-6;
  cfg.tijdeman_R = 0.01;
  cfg.checks = false;
  const std::string text = config_to_json(cfg);
  const CampaignConfig back = parse_config_json(text);
  EXPECT_EQ(config_to_json(back), text);
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.K.points.size(), 4u);
  EXPECT_FALSE(back.checks);
}

TEST(Io, ConfigRejectsUnknownAndInconsistent) {
  EXPECT_EQ(code_of([] { parse_config_json(R"({"kk": 2})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_config_json(R"({"k": 2, "m": 5})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_config_json(R"({"k": "two"})"); }), Errc::ParseError);
  EXPECT_EQ(parse_config_json(R"({"k": 3, "m": 10})").k, 3);
}

TEST(Io, MissingFile) {
  EXPECT_EQ(code_of([] { read_poly_file("/nonexistent/nash.json"); }), Errc::ParseError);
}
