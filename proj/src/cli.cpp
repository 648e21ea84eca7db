#include "aut/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "aut/invariants.hpp"
#include "aut/io.hpp"
#include "aut/lab.hpp"
#include "aut/truncation.hpp"

namespace aut::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::ParseError, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

pre::PreorderSpec load_spec(const std::string& arg) {
  if (arg == "Z") return pre::PreorderSpec::plain(pre::Base::Z);
  if (arg == "N") return pre::PreorderSpec::plain(pre::Base::N);
  if (arg == "NEGN") return pre::PreorderSpec::plain(pre::Base::NegN);
  return io::parse_preorder(read_file(arg));
}

std::uint64_t default_max_order() {
  if (const char* env = std::getenv("AUT_MAX_ORDER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return trunc::kDefaultMaxOrder;
}

std::string hash_hex(const mat::Mat& m) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = mat::fnv1a(mat::canonical_bytes(m));
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

int report_exit(const std::vector<lab::SuiteReport>& reports, std::ostream& out) {
  bool ok = true;
  for (const auto& r : reports) {
    for (const auto& line : r.lines()) out << line << "\n";
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}

lab::ExampleFamily parse_family(const std::string& s) {
  if (s == "H" || s == "h") return lab::ExampleFamily::h();
  if (s.size() > 1 && (s[0] == 'L' || s[0] == 'l') && s[1] == ':')
    return lab::ExampleFamily::l(std::stoll(s.substr(2)));
  if (s.size() > 1 && (s[0] == 'B' || s[0] == 'b') && s[1] == ':')
    return lab::ExampleFamily::b(std::stoll(s.substr(2)));
  fail(Err::ParseError, "family must be H, L:<n> or B:<k>");
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computational algebra for almost upper triangular matrix groups over F_q"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string spec_arg = "Z";
  std::uint64_t seed = 0;
  std::uint64_t max_order = default_max_order();
  app.add_option("--spec", spec_arg, "preorder spec file, or Z | N | NEGN for the plain bases");
  app.add_option("--seed", seed, "pseudo-random seed (default 0)");
  app.add_option("--max-order", max_order, "enumeration/closure budget");

  std::function<int()> run;

  // ------------------------------------------------------------- preorder
  auto* pre_cmd = app.add_subcommand("preorder", "preorder spec operations");
  pre_cmd->require_subcommand(1);
  static std::string pre_file, set_arg, from_arg, to_arg, at_arg, parts_arg;

  auto* pre_show = pre_cmd->add_subcommand("show", "parse and reprint a spec");
  pre_show->add_option("file", pre_file)->required();
  pre_show->callback([&]() {
    run = [&]() {
      out << io::print_preorder(load_spec(pre_file));
      return 0;
    };
  });

  auto* pre_hull = pre_cmd->add_subcommand("hull", "smallest strongly convex superset");
  pre_hull->add_option("file", pre_file)->required();
  pre_hull->add_option("--set", set_arg, "index set, e.g. {1,5} or 1..5")->required();
  pre_hull->callback([&]() {
    run = [&]() {
      auto spec = load_spec(pre_file);
      out << io::print_index_set(spec, spec.hull(io::parse_index_set(set_arg, spec))) << "\n";
      return 0;
    };
  });

  auto* pre_interval = pre_cmd->add_subcommand("interval", "interval [i, j]");
  pre_interval->add_option("file", pre_file)->required();
  pre_interval->add_option("--from", from_arg)->required();
  pre_interval->add_option("--to", to_arg)->required();
  pre_interval->callback([&]() {
    run = [&]() {
      auto spec = load_spec(pre_file);
      out << io::print_index_set(spec, spec.interval(io::parse_index(from_arg, spec),
                                                     io::parse_index(to_arg, spec)))
          << "\n";
      return 0;
    };
  });

  auto* pre_class = pre_cmd->add_subcommand("class", "equivalence class [k, k]");
  pre_class->add_option("file", pre_file)->required();
  pre_class->add_option("--at", at_arg)->required();
  pre_class->callback([&]() {
    run = [&]() {
      auto spec = load_spec(pre_file);
      out << io::print_index_set(spec, spec.cls(io::parse_index(at_arg, spec))) << "\n";
      return 0;
    };
  });

  auto* pre_coarsen = pre_cmd->add_subcommand("coarsen", "apply a finitary partition");
  pre_coarsen->add_option("file", pre_file)->required();
  pre_coarsen->add_option("--parts", parts_arg, "parts as {..}|{..}")->required();
  pre_coarsen->callback([&]() {
    run = [&]() {
      auto spec = load_spec(pre_file);
      pre::FinitaryPartition partition;
      std::stringstream ss(parts_arg);
      std::string part;
      while (std::getline(ss, part, '|'))
        partition.parts.push_back(io::parse_index_set(part, spec));
      out << io::print_preorder(spec.coarsen(partition));
      return 0;
    };
  });

  // ----------------------------------------------------------------- elem
  auto* elem_cmd = app.add_subcommand("elem", "window element operations");
  elem_cmd->require_subcommand(1);
  static std::string file_a, file_b, region_arg;

  auto load_elem = [&](const std::string& path, const pre::PreorderSpec& spec) {
    return io::parse_element(read_file(path), spec);
  };

  auto* elem_mul = elem_cmd->add_subcommand("mul", "product of two elements");
  elem_mul->add_option("a", file_a)->required();
  elem_mul->add_option("b", file_b)->required();
  elem_mul->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto [fa, a] = load_elem(file_a, spec);
      auto [fb, b] = load_elem(file_b, spec);
      out << io::print_element(a.mul(b)) << "\n";
      return 0;
    };
  });

  auto* elem_inv = elem_cmd->add_subcommand("inv", "inverse by Gaussian elimination");
  elem_inv->add_option("a", file_a)->required();
  elem_inv->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      out << io::print_element(load_elem(file_a, spec).second.inv()) << "\n";
      return 0;
    };
  });

  auto* elem_invt = elem_cmd->add_subcommand("inv-tri", "inverse by the triangular series");
  elem_invt->add_option("a", file_a)->required();
  elem_invt->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      out << io::print_element(load_elem(file_a, spec).second.inv_triangular()) << "\n";
      return 0;
    };
  });

  auto* elem_dec = elem_cmd->add_subcommand("decompose", "u * d with d the diagonal part");
  elem_dec->add_option("a", file_a)->required();
  elem_dec->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto [u, d] = load_elem(file_a, spec).second.decompose();
      out << io::print_element(u) << "\n" << io::print_element(d) << "\n";
      return 0;
    };
  });

  auto* elem_theta = elem_cmd->add_subcommand("theta", "restriction to a convex region");
  elem_theta->add_option("a", file_a)->required();
  elem_theta->add_option("--region", region_arg)->required();
  elem_theta->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto [f, a] = load_elem(file_a, spec);
      out << io::print_finite_matrix(f, a.theta(io::parse_index_set(region_arg, spec)), spec)
          << "\n";
      return 0;
    };
  });

  auto* elem_lift = elem_cmd->add_subcommand("lift", "window element from a finite matrix");
  elem_lift->add_option("m", file_a)->required();
  elem_lift->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto [f, m] = io::parse_finite_matrix(read_file(file_a), spec);
      out << io::print_element(mat::WindowElement::lift(m, f, spec)) << "\n";
      return 0;
    };
  });

  auto* elem_pred = elem_cmd->add_subcommand("pred", "membership predicates");
  elem_pred->add_option("a", file_a)->required();
  elem_pred->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto p = load_elem(file_a, spec).second.predicates();
      out << "in_U=" << bool_str(p.in_u) << " in_U_star=" << bool_str(p.in_u_star)
          << " in_Delta=" << bool_str(p.in_delta) << " is_scalar=" << bool_str(p.is_scalar)
          << " deviation_finite_rank=" << bool_str(p.deviation_finite_rank) << "\n";
      return 0;
    };
  });

  auto* elem_rank = elem_cmd->add_subcommand("rank", "scalar and deviation rank");
  elem_rank->add_option("a", file_a)->required();
  elem_rank->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto r = load_elem(file_a, spec).second.deviation_rank();
      out << "scalar=" << r.scalar << " rank=";
      if (r.rank)
        out << *r.rank;
      else
        out << "INFINITE";
      out << "\n";
      return 0;
    };
  });

  auto* elem_comm = elem_cmd->add_subcommand("commutator", "[a, b] = a^-1 b^-1 a b");
  elem_comm->add_option("a", file_a)->required();
  elem_comm->add_option("b", file_b)->required();
  elem_comm->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto a = load_elem(file_a, spec).second;
      auto b = load_elem(file_b, spec).second;
      out << io::print_element(a.commutator(b)) << "\n";
      return 0;
    };
  });

  // ---------------------------------------------------------------- trunc
  auto* trunc_cmd = app.add_subcommand("trunc", "finite truncation groups");
  trunc_cmd->require_subcommand(1);
  static std::uint32_t q_arg = 2;
  static std::string inner_arg, gens_arg, elem_file, ambient_arg = "gl";

  auto make_trunc = [&]() {
    auto spec = load_spec(spec_arg);
    auto field = gf::Field::make(q_arg);
    auto region = io::parse_index_set(region_arg, spec);
    return trunc::Truncation::make(spec, region, field);
  };

  auto* tr_order = trunc_cmd->add_subcommand("order", "order of U over the region by formula");
  tr_order->add_option("--q", q_arg)->required();
  tr_order->add_option("--region", region_arg)->required();
  tr_order->callback([&]() {
    run = [&]() {
      auto t = make_trunc();
      out << "config=" << region_arg << " order_formula=" << trunc::count_str(order_U(t)) << "\n";
      return 0;
    };
  });

  auto* tr_enum = trunc_cmd->add_subcommand("enumerate", "order formula vs exhaustive count");
  tr_enum->add_option("--q", q_arg)->required();
  tr_enum->add_option("--region", region_arg)->required();
  tr_enum->callback([&]() {
    run = [&]() {
      auto t = make_trunc();
      const auto formula = order_U(t);
      const auto members = trunc::enumerate_U(t, max_order);
      const bool match = formula == static_cast<trunc::Count>(members.size());
      out << "config=" << region_arg << " order_formula=" << trunc::count_str(formula)
          << " order_enum=" << members.size() << " match=" << bool_str(match) << "\n";
      return match ? 0 : 1;
    };
  });

  auto* tr_closure = trunc_cmd->add_subcommand("closure", "subgroup generated by matrices");
  tr_closure->add_option("--q", q_arg)->required();
  tr_closure->add_option("--region", region_arg)->required();
  tr_closure->add_option("--gens", gens_arg, "comma-separated matrix files")->required();
  tr_closure->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto t = make_trunc();
      std::vector<mat::Mat> gens;
      std::stringstream ss(gens_arg);
      std::string path;
      std::string hashes;
      while (std::getline(ss, path, ',')) {
        auto [f, m] = io::parse_finite_matrix(read_file(path), spec);
        if (f != t.field()) fail(Err::FieldMismatch, "generator field differs from --q");
        if (m.indices != t.region()) fail(Err::RegionNotNested, "generator region mismatch");
        if (!hashes.empty()) hashes += ",";
        hashes += hash_hex(m.entries);
        gens.push_back(m.entries);
      }
      auto c = trunc::closure(t, gens, max_order);
      out << "config=" << region_arg << " gens=" << hashes << " order=" << c.size() << "\n";
      return 0;
    };
  });

  auto* tr_nc = trunc_cmd->add_subcommand("normal-closure", "normal closure in GL or U");
  tr_nc->add_option("--q", q_arg)->required();
  tr_nc->add_option("--region", region_arg)->required();
  tr_nc->add_option("--elem", elem_file, "matrix file")->required();
  tr_nc->add_option("--ambient", ambient_arg, "gl or u (default gl)");
  tr_nc->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto t = make_trunc();
      auto [f, m] = io::parse_finite_matrix(read_file(elem_file), spec);
      if (f != t.field()) fail(Err::FieldMismatch, "element field differs from --q");
      auto ambient = (ambient_arg == "u") ? trunc::enumerate_U(t, max_order)
                                          : trunc::enumerate_GL(t, max_order);
      auto nc = trunc::normal_closure(t, m.entries, ambient, max_order);
      out << "config=" << region_arg << " gen=" << hash_hex(m.entries)
          << " order=" << nc.size() << " contains_SL=" << bool_str(trunc::contains_SL(t, nc))
          << "\n";
      return 0;
    };
  });

  auto* tr_cent = trunc_cmd->add_subcommand("centralizer", "centralizer of targets");
  tr_cent->add_option("--q", q_arg)->required();
  tr_cent->add_option("--region", region_arg)->required();
  tr_cent->add_option("--targets", gens_arg, "comma-separated matrix files")->required();
  tr_cent->add_option("--ambient", ambient_arg, "gl or u (default gl)");
  tr_cent->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto t = make_trunc();
      std::vector<mat::Mat> targets;
      std::stringstream ss(gens_arg);
      std::string path;
      while (std::getline(ss, path, ',')) {
        auto [f, m] = io::parse_finite_matrix(read_file(path), spec);
        if (f != t.field()) fail(Err::FieldMismatch, "target field differs from --q");
        targets.push_back(m.entries);
      }
      auto ambient = (ambient_arg == "u") ? trunc::enumerate_U(t, max_order)
                                          : trunc::enumerate_GL(t, max_order);
      auto c = trunc::centralizer(t, targets, ambient);
      out << "config=" << region_arg << " ambient=" << ambient_arg << " order=" << c.size()
          << "\n";
      return 0;
    };
  });

  auto* tr_index = trunc_cmd->add_subcommand("index", "index of the congruence subgroup");
  tr_index->add_option("--q", q_arg)->required();
  tr_index->add_option("--region", region_arg)->required();
  tr_index->add_option("--inner", inner_arg, "inner region; {} for empty")->required();
  tr_index->callback([&]() {
    run = [&]() {
      auto spec = load_spec(spec_arg);
      auto t = make_trunc();
      auto inner = io::parse_index_set(inner_arg, spec);
      out << "config=" << region_arg << " inner=" << inner_arg
          << " index=" << trunc::count_str(trunc::index_congruence(t, inner)) << "\n";
      return 0;
    };
  });

  // ------------------------------------------------------------ invariant
  auto* inv_cmd = app.add_subcommand("invariant", "sharp invariant and comparisons");
  inv_cmd->require_subcommand(1);
  static std::string spec1, spec2;
  static std::uint32_t pgl_n = 2;

  auto* inv_sharp = inv_cmd->add_subcommand("sharp", "class-size invariant of a spec");
  inv_sharp->add_option("file", spec1)->required();
  inv_sharp->callback([&]() {
    run = [&]() {
      auto sharp = inv::sharp_of(load_spec(spec1));
      out << "sizes=" << io::print_semilinear(sharp.sizes)
          << " recurring=" << io::print_semilinear(sharp.recurring) << "\n";
      return 0;
    };
  });

  auto* inv_cmp = inv_cmd->add_subcommand("compare", "necessary local-isomorphism condition");
  inv_cmp->add_option("a", spec1)->required();
  inv_cmp->add_option("b", spec2)->required();
  inv_cmp->callback([&]() {
    run = [&]() {
      auto res = inv::locally_isomorphic_necessary(load_spec(spec1), load_spec(spec2));
      if (res.passes) {
        out << "verdict=passes witness=none\n";
        return 0;
      }
      out << "verdict=fails witness=" << res.witness->first << "/" << res.witness->second << "\n";
      return 1;
    };
  });

  auto* inv_pgl = inv_cmd->add_subcommand("pgl", "existence of a PGL_n quotient");
  inv_pgl->add_option("file", spec1)->required();
  inv_pgl->add_option("--n", pgl_n)->required();
  inv_pgl->add_option("--q", q_arg)->required();
  inv_pgl->callback([&]() {
    run = [&]() {
      const bool exists =
          inv::pgl_quotient_exists(load_spec(spec1), pgl_n, gf::Field::make(q_arg));
      out << "pgl_quotient=" << bool_str(exists) << "\n";
      return 0;
    };
  });

  // ------------------------------------------------------------------ lab
  auto* lab_cmd = app.add_subcommand("lab", "verification suites");
  lab_cmd->require_subcommand(1);
  static std::string outer_arg, family_arg = "H";
  static std::uint32_t trials = 20;

  auto add_lab_options = [&](CLI::App* sub, bool with_family) {
    sub->add_option("--q", q_arg)->required();
    sub->add_option("--inner", inner_arg)->required();
    sub->add_option("--outer", outer_arg)->required();
    sub->add_option("--trials", trials);
    if (with_family) sub->add_option("--family", family_arg, "H, L:<n> or B:<k>");
  };
  auto make_cfg = [&]() {
    auto spec = load_spec(spec_arg);
    lab::SuiteConfig cfg{spec,
                         gf::Field::make(q_arg),
                         io::parse_index_set(inner_arg, spec),
                         io::parse_index_set(outer_arg, spec),
                         trials,
                         seed,
                         max_order};
    return cfg;
  };

  auto* lab_simpl = lab_cmd->add_subcommand("simplicity", "finite-scale simplicity machinery");
  add_lab_options(lab_simpl, false);
  lab_simpl->callback([&]() {
    run = [&]() { return report_exit({lab::lab_simplicity_truncated(make_cfg())}, out); };
  });
  auto* lab_centre = lab_cmd->add_subcommand("centre", "centre at finite scale");
  add_lab_options(lab_centre, false);
  lab_centre->callback([&]() {
    run = [&]() { return report_exit({lab::lab_centre(make_cfg())}, out); };
  });
  auto* lab_qc = lab_cmd->add_subcommand("quasicentre", "quasicentre at finite scale");
  add_lab_options(lab_qc, false);
  lab_qc->callback([&]() {
    run = [&]() { return report_exit({lab::lab_quasicentre(make_cfg())}, out); };
  });
  auto* lab_ex = lab_cmd->add_subcommand("examples", "C-stability example subgroups");
  add_lab_options(lab_ex, true);
  lab_ex->callback([&]() {
    run = [&]() {
      return report_exit({lab::lab_example_subgroups(make_cfg(), parse_family(family_arg))}, out);
    };
  });
  auto* lab_dense = lab_cmd->add_subcommand("dense-normal", "finite-rank dense normal subgroup");
  add_lab_options(lab_dense, false);
  lab_dense->callback([&]() {
    run = [&]() { return report_exit({lab::lab_dense_normal(make_cfg())}, out); };
  });
  auto* lab_all = lab_cmd->add_subcommand("all", "every suite applicable to the base shape");
  add_lab_options(lab_all, false);
  lab_all->callback([&]() {
    run = [&]() { return report_exit(lab::run_all(make_cfg()), out); };
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return run ? run() : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace aut::cli
