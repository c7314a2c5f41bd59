#include "dilation/admit.hpp"
#include "dilation/cli.hpp"
#include "dilation/error.hpp"
#include "dilation/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace dilation;

namespace {

struct TempDir
{
  std::filesystem::path path;

  TempDir()
  {
    path = std::filesystem::temp_directory_path() /
           ("dilation-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string write(const std::string& name, const std::string& body) const
  {
    const auto p = path / name;
    std::ofstream(p) << body;
    return p.string();
  }

  static int& counter()
  {
    static int c = 0;
    return c;
  }
};

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  args.insert(args.begin(), "dilation");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string matrix_json(const Matrix& m) { return matrix_to_json(m).dump(); }

} // namespace

TEST_CASE("matrix json round trip")
{
  const Matrix m{{0.1, 1.0 / 3.0}, {-2e-300, 1e300}};
  CHECK(matrix_from_json(parse_json(matrix_to_json(m).dump(), "t")) == m);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"n": 2, "rows": [[1, 2], [3]]})", "t")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"n": 9, "rows": []})", "t")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"rows": [[1]]})", "t")), ParseError);
  CHECK_THROWS_AS(parse_json("{", "t"), ParseError);
}

TEST_CASE("verdict and wavelet json round trip")
{
  for (const Matrix& x : {Matrix{{1.0, 1.0}, {0.0, 1.0}}, Matrix{{0.0, 1.0}, {-1.0, 0.0}},
                          Matrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}}}) {
    const Verdict v = decide(x);
    CHECK(verdict_from_json(parse_json(verdict_to_json(v).dump(), "t")) == v);
  }

  const WaveletSpec p = make_profile_wavelet(Matrix{{1.0, 1.0}, {0.0, 1.0}});
  const WaveletSpec i = make_indicator_wavelet(Vector{1.0, -2.0});
  const double h = std::sqrt(1.5);
  const WaveletSpec tab = make_profile_wavelet(Matrix::identity(2), Profile::tabulated({0.0, 1.0, 2.0}, {0.0, h, 0.0}));
  const WaveletSpec t = make_transported_wavelet(i, Matrix{{2.0, 1.0}, {0.5, 1.0}});
  for (const WaveletSpec* w : {&p, &i, &tab, &t})
    CHECK(wavelet_from_json(parse_json(wavelet_to_json(*w).dump(), "t")) == *w);
  CHECK_THROWS_AS(wavelet_from_json(parse_json(R"({"kind": "haar"})", "t")), ParseError);
}

TEST_CASE("report json round trip")
{
  const WaveletSpec w = make_indicator_wavelet(Vector{1.0, 2.0});
  const DeltaReport r = delta_sweep(w, group_generator(w), 5, 42);
  CHECK(delta_report_from_json(parse_json(delta_report_to_json(r).dump(), "t")) == r);

  const GrowthTable g = divergence_probe(ProbeKind::Rotation2D, {1.0, 2.0, 4.0});
  const GrowthTable back = growth_table_from_json(parse_json(growth_table_to_json(g).dump(), "t"));
  CHECK(back.masses == g.masses);
  CHECK(back.fitted_exponent == g.fitted_exponent);
}

TEST_CASE("cli check exit codes")
{
  TempDir dir;
  CHECK(run({"check", "--matrix", dir.write("r.json", matrix_json(Matrix{{0.0, 1.0}, {-1.0, 0.0}}))}).code == 1);
  const Run id = run({"check", "--matrix", dir.write("i.json", matrix_json(Matrix::identity(2)))});
  CHECK(id.code == 0);
  CHECK(verdict_from_json(parse_json(id.out, "stdout")).status == Status::Admissible);
  CHECK(run({"check", "--matrix",
             dir.write("j.json", matrix_json(Matrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}}))})
            .code == 2);

  const Run bad = run({"check", "--matrix", dir.write("b.json", R"({"n": 2, "rowz": []})")});
  CHECK(bad.code == 64);
  CHECK(bad.err.find("rows") != std::string::npos);
  CHECK(run({"check", "--matrix", dir.write("ok.json", matrix_json(Matrix::identity(2))), "--bogus"}).code == 64);
  CHECK(run({"check"}).code == 64);
}

TEST_CASE("cli construct and delta")
{
  TempDir dir;
  const Run prof = run({"construct", "--matrix", dir.write("x.json", matrix_json(Matrix{{1.0, 1.0}, {0.0, 1.0}}))});
  REQUIRE(prof.code == 0);
  const WaveletSpec w = wavelet_from_json(parse_json(prof.out, "stdout"));
  CHECK(w.is_profile());
  CHECK(w.profile().profile.support_end() == 1.0);

  const Run ind = run({"construct", "--matrix", dir.write("d.json", matrix_json(Matrix::diagonal(Vector{1.0, -2.0})))});
  REQUIRE(ind.code == 0);
  CHECK(wavelet_from_json(parse_json(ind.out, "stdout")).is_indicator());

  CHECK(run({"construct", "--matrix", dir.write("z.json", matrix_json(Matrix::diagonal(Vector{1.0, -1.0})))}).code == 1);

  // admissible by trace but neither diagonal nor of same-sign symmetric part
  const Matrix s{{1.0, 1.0}, {0.0, 1.0}};
  const Matrix x = s * Matrix::diagonal(Vector{1.0, -2.0}) * inverse(s);
  const std::string xp = dir.write("y.json", matrix_json(x));
  CHECK(run({"construct", "--matrix", xp}).code == 4);
  const Run tr = run({"construct", "--matrix", xp, "--similarity", dir.write("s.json", matrix_json(s))});
  REQUIRE(tr.code == 0);
  const std::string wp = dir.write("w.json", tr.out);
  CHECK(wavelet_from_json(parse_json(tr.out, "stdout")).is_transported());

  const Run delta = run({"delta", "--wavelet", wp, "--samples", "20", "--seed", "42"});
  CHECK(delta.code == 0);
  const DeltaReport rep = delta_report_from_json(parse_json(delta.out, "stdout"));
  CHECK(rep.samples.size() == 20);
  CHECK(rep.max_abs_deviation <= 1e-6);
  CHECK(delta.out == run({"delta", "--wavelet", wp, "--samples", "20", "--seed", "42", "--threads", "3"}).out);

  // the wrong group breaches the tolerance
  const std::string other = dir.write("o.json", matrix_json(Matrix::diagonal(Vector{1.0, -3.0})));
  CHECK(run({"delta", "--wavelet", wp, "--matrix", other, "--samples", "5"}).code == 3);
}

TEST_CASE("cli probes and reconstruction")
{
  TempDir dir;
  const Run rot = run({"probe", "--kind", "rotation", "--format", "csv"});
  CHECK(rot.code == 0);
  CHECK(rot.out.rfind("R,mass\n", 0) == 0);
  CHECK(rot.out.find("fitted_exponent=2") != std::string::npos);

  const Run lie = run({"probe", "--kind", "lie", "--format", "csv"});
  CHECK(lie.code == 0);
  CHECK(lie.out.rfind("m,error\n8,", 0) == 0);

  const std::string xp = dir.write("x.json", matrix_json(Matrix{{1.0, 1.0}, {0.0, 1.0}}));
  CHECK(run({"probe", "--kind", "orbit", "--matrix", xp, "--samples", "10"}).code == 0);
  CHECK(run({"probe", "--kind", "spiral"}).code == 64);

  const std::string out = (dir.path / "tz.json").string();
  CHECK(run({"probe", "--kind", "trace-zero", "--out", out}).code == 0);
  const GrowthTable g = growth_table_from_json(read_json_file(out));
  CHECK(g.fitted_exponent == doctest::Approx(1.0));

  const std::string wp = dir.write("w.json", run({"construct", "--matrix", xp}).out);
  CHECK(run({"reconstruct", "--wavelet", wp, "--points", "7"}).code == 0);
}
