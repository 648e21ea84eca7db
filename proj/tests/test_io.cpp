#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "aut/cli.hpp"
#include "aut/io.hpp"
#include "aut/rng.hpp"

using namespace aut;
using namespace aut::io;
using namespace aut::pre;

namespace {

std::string q1_text() {
  std::string t = "base = Z\npattern = block(10, full)";
  for (int i = 0; i < 10; ++i) t += ", block(1, chain)";
  return t + "\n";
}

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    const auto tick = std::chrono::steady_clock::now().time_since_epoch().count();
    dir = std::filesystem::temp_directory_path() / ("aut_io_test_" + std::to_string(tick));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content) const {
    auto p = dir / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("preorder spec round trips") {
  for (const std::string& text :
       {std::string("base = Z\npattern = block(1, chain)\n"), q1_text(),
        std::string("base = N\npattern = block(2, antichain), block(1, chain)\n"),
        std::string("base = Z\npattern = block(3, pairs: (0,1))\n"),
        std::string("base = Z\npattern = block(1, chain)\nexception 4 = block(1, chain)\n"),
        std::string("base = Z\nsizes = semilinear{ finite = {2}; prog = (4,3) }\n"),
        std::string("base = Z\npattern = block(1, chain)\ncoarsen = {0, 1} | {4, 5}\n")}) {
    auto spec = parse_preorder(text);
    auto reprinted = print_preorder(spec);
    auto spec2 = parse_preorder(reprinted);
    INFO(text);
    CHECK(spec == spec2);
    CHECK(print_preorder(spec2) == reprinted);
  }
}

TEST_CASE("element literals round trip, including empty windows") {
  auto z = PreorderSpec::plain(Base::Z);
  for (const std::string& text :
       {std::string("elem { q = 5; scalar = 1; window = []; core = [] }"),
        std::string("elem { q = 5; scalar = 2; window = [0, 1]; core = [[1,1],[0,2]] }"),
        std::string("elem { q = 4; scalar = 3; window = [-1, 0]; core = [[2,1],[0,1]] }")}) {
    auto [f, e] = parse_element(text, z);
    auto [f2, e2] = parse_element(print_element(e), z);
    CHECK(e == e2);
  }
  // parse . print is the identity on constructed values
  Rng rng(3);
  auto f9 = gf::Field::make(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto e = mat::WindowElement::random(
        z, f9, IndexSet::of({z.from_flat(0), z.from_flat(1), z.from_flat(2)}),
        mat::RandomProfile::General, rng);
    auto [fp, parsed] = parse_element(print_element(e), z);
    REQUIRE(parsed == e);
  }
}

TEST_CASE("element parsing rejects bad inputs with the right codes") {
  auto z = PreorderSpec::plain(Base::Z);
  auto code_of = [&](const std::string& text) {
    try {
      parse_element(text, z);
    } catch (const Error& e) {
      return e.code();
    }
    return Err::ParseError;
  };
  CHECK(code_of("elem { q = 2; scalar = 1; window = [1, 3]; core = [[1,0],[0,1]] }") ==
        Err::WindowNotStronglyConvex);
  CHECK(code_of("elem { q = 2; scalar = 1; window = [1, 2]; core = [[1,1],[1,1]] }") ==
        Err::SingularCore);
  CHECK(code_of("elem { q = 2; scalar = 0; window = []; core = [] }") == Err::ZeroScalar);
  CHECK(code_of("elem { q = 2; scalar = 1; window = [0]; core = [[7]] }") ==
        Err::InvalidArgument);
  CHECK(code_of("elem { q = 2 scalar = 1; window = []; core = [] }") == Err::ParseError);
}

TEST_CASE("index literals") {
  auto q1 = parse_preorder(q1_text());
  CHECK(parse_index("25", q1) == Index{11, 5});
  CHECK(parse_index("11:5", q1) == Index{11, 5});
  CHECK(parse_index("-1", q1) == Index{-1, 0});
  CHECK_THROWS_AS(parse_index("11:99", q1), Error);

  auto z = PreorderSpec::plain(Base::Z);
  CHECK(parse_index_set("{1, 3, 2}", z).size() == 3);
  CHECK(parse_index_set("{}", z).empty());
  auto r = parse_index_set("-2..3", z);
  CHECK(r.size() == 6);
  CHECK(print_index_set(z, r) == "{-2, -1, 0, 1, 2, 3}");
  // multi-slot specs print block:slot
  CHECK(print_index_set(q1, q1.cls(q1.from_flat(0))).substr(0, 8) == "{0:0, 0:");
}

TEST_CASE("semilinear literals") {
  auto s = parse_semilinear("semilinear{ finite = {1,9}; prog = (4,4);(6,4) }");
  CHECK(parse_semilinear(print_semilinear(s)) == s);
  CHECK(parse_semilinear("semilinear{ finite = {} }").empty());
}

TEST_CASE("finite matrix literals") {
  auto z = PreorderSpec::plain(Base::Z);
  auto [f, m] = parse_finite_matrix("mat { q = 2; region = [0, 1]; entries = [[0,1],[1,0]] }", z);
  CHECK(m.entries.at(0, 1) == 1);
  auto printed = print_finite_matrix(f, m, z);
  auto [f2, m2] = parse_finite_matrix(printed, z);
  CHECK(m == m2);
}

TEST_CASE("cli: element product of identities") {
  TempDir tmp;
  auto a = tmp.file("id.elem", "elem { q = 5; scalar = 1; window = []; core = [] }\n");
  std::string out;
  const int code = run_cli({"elem", "mul", a, a}, &out);
  CHECK(code == 0);
  CHECK(out == "elem { q = 5; scalar = 1; window = []; core = [] }\n");
}

TEST_CASE("cli: invariant compare on the interval-pattern specs") {
  TempDir tmp;
  auto q1 = tmp.file("q1.pre", q1_text());
  std::string q2_text = "base = Z\npattern = block(10, full)";
  for (int i = 0; i < 90; ++i) q2_text += ", block(1, chain)";
  auto q2 = tmp.file("q2.pre", q2_text + "\n");
  std::string out;
  CHECK(run_cli({"invariant", "compare", q1, q2}, &out) == 0);
  CHECK(out == "verdict=passes witness=none\n");

  auto z = tmp.file("z.pre", "base = Z\npattern = block(1, chain)\n");
  auto odd = tmp.file("odd.pre", "base = Z\nsizes = semilinear{ finite = {1}; prog = (3,2) }\n");
  CHECK(run_cli({"invariant", "compare", z, odd}, &out) == 1);
  CHECK(out == "verdict=fails witness=1/2\n");
}

TEST_CASE("cli: hypothesis violations exit with code 2") {
  std::string out, err;
  const int code =
      run_cli({"lab", "simplicity", "--q", "3", "--inner", "0..1", "--outer", "0..2"}, &out, &err);
  CHECK(code == 2);
  CHECK(err.find("HypothesisViolated") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with code 2") {
  std::string out, err;
  CHECK(run_cli({"no-such-command"}, &out, &err) == 2);
  CHECK(run_cli({"elem", "mul"}, &out, &err) == 2);
}

TEST_CASE("cli: deterministic output for fixed seed") {
  std::string out1, out2;
  std::vector<std::string> args{"lab",     "dense-normal", "--q",    "4",  "--inner", "0..1",
                                "--outer", "-1..2",        "--seed", "11", "--trials", "12"};
  CHECK(run_cli(args, &out1) == 0);
  CHECK(run_cli(args, &out2) == 0);
  CHECK(out1 == out2);
  CHECK(!out1.empty());
}

TEST_CASE("cli: trunc reports") {
  std::string out;
  CHECK(run_cli({"trunc", "enumerate", "--q", "2", "--region", "1..3"}, &out) == 0);
  CHECK(out == "config=1..3 order_formula=8 order_enum=8 match=true\n");
  CHECK(run_cli({"trunc", "order", "--q", "3", "--region", "0..1"}, &out) == 0);
  CHECK(out == "config=0..1 order_formula=12\n");
  CHECK(run_cli({"trunc", "index", "--q", "2", "--region", "-1..3", "--inner", "{}"}, &out) == 0);
  CHECK(out.find("index=1") != std::string::npos);
}

TEST_CASE("cli: preorder operations") {
  TempDir tmp;
  auto q1 = tmp.file("q1.pre", q1_text());
  std::string out;
  CHECK(run_cli({"preorder", "class", q1, "--at", "3"}, &out) == 0);
  CHECK(out.find("0:0") != std::string::npos);
  CHECK(run_cli({"preorder", "hull", q1, "--set", "{10,25}"}, &out) == 0);
  CHECK(run_cli({"preorder", "coarsen", tmp.file("z.pre", "base = Z\npattern = block(1, chain)\n"),
                 "--parts", "{0,1,2}"},
                &out) == 0);
  CHECK(out.find("coarsen = {0, 1, 2}") != std::string::npos);
}
