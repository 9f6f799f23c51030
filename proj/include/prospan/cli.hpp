#pragma once

// The `prospan` command line. run_cli returns the process exit code:
// 0 computed or verified, 1 a FAIL line was printed, 2 input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "prospan/io.hpp"
#include "prospan/verify.hpp"

namespace prospan {

namespace cli_detail {

inline std::string class_header(const FiniteGroup& g) {
  const auto& lat = g.lattice();
  std::ostringstream os;
  os << "classes (subgroup orders):";
  for (std::size_t c = 0; c < lat.class_count(); ++c) os << " " << lat.rep(c).size();
  return os.str();
}

inline std::string elements(const std::vector<Element>& v) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

inline void group_show(std::ostream& out, const FiniteGroup& g) {
  out << "order " << g.order() << "\n";
  out << "abelian " << (g.is_abelian() ? "yes" : "no") << "\n";
  out << "element orders";
  for (Element x = 0; x < g.order(); ++x) out << " " << g.element_order(x);
  out << "\n";
  out << "subgroups " << g.lattice().subgroups.size() << ", conjugacy classes " << g.lattice().class_count() << "\n";
  write_group(out, g);
}

inline void subgroups(std::ostream& out, const FiniteGroup& g) {
  const auto& lat = g.lattice();
  for (std::size_t c = 0; c < lat.class_count(); ++c) {
    const auto& h = lat.rep(c);
    out << "class " << c << " order " << h.size() << " index " << g.order() / h.size() << " members "
        << lat.classes[c].size() << (lat.normal[lat.class_rep[c]] ? " normal" : "") << "\n";
    for (std::size_t s : lat.classes[c]) out << "  " << elements(lat.subgroups[s].elements) << "\n";
  }
}

inline void tom(std::ostream& out, const GroupRef& g) {
  const auto t = burnside_tables(g);
  out << class_header(*g) << "\n";
  for (const auto& row : t.marks) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
}

inline void burnside(std::ostream& out, const GroupRef& g) {
  const auto t = burnside_tables(g);
  const std::size_t n = t.marks.size();
  out << class_header(*g) << "\n";
  out << "t_c is the span pt <- G/H_c -> pt; rows give t_a * t_b\n";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      out << "t" << a << " * t" << b << " =";
      bool any = false;
      for (std::size_t c = 0; c < n; ++c)
        if (t.constants[a][b][c]) {
          out << (any ? " + " : " ") << t.constants[a][b][c] << " t" << c;
          any = true;
        }
      if (!any) out << " 0";
      out << "\n";
    }
}

inline int emit(std::ostream& out, const std::vector<Section>& sections) {
  bool ok = true;
  for (const auto& s : sections) {
    out << "== " << s.name << "\n" << s.text();
    ok = ok && s.ok;
  }
  out << (ok ? "PASS" : "FAIL") << " verify: " << sections.size() << " section(s)\n";
  return ok ? 0 : 1;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite span categories, Mackey functors and their verification suite", "prospan"};
  app.require_subcommand(1);

  std::string group_arg, gset_x, gset_y, mackey_file, out_file, check_name, tower_arg = "2,3", format = "text";
  std::size_t cap = 6, span_cap = 3;
  std::uint64_t seed = 0;
  std::uint32_t normal = 0;

  auto* show = app.add_subcommand("group-show", "Print order, element orders and the multiplication table");
  show->add_option("group", group_arg, "Group file or built-in name (C4, S3, D4, A4, ...)")->required();
  auto* subs = app.add_subcommand("subgroups", "List subgroups by conjugacy class");
  subs->add_option("group", group_arg, "Group file or built-in name")->required();
  auto* tomc = app.add_subcommand("tom", "Table of marks |(G/K)^H|, one row per orbit G/K");
  tomc->add_option("group", group_arg, "Group file or built-in name")->required();
  auto* burn = app.add_subcommand("burnside", "Structure constants of the Burnside ring");
  burn->add_option("group", group_arg, "Group file or built-in name")->required();
  auto* shom = app.add_subcommand("span-hom", "Basis of transitive spans X <- S -> Y");
  shom->add_option("x", gset_x, "G-set file for X")->required();
  shom->add_option("y", gset_y, "G-set file for Y")->required();
  auto* mchk = app.add_subcommand("mackey-check", "Check the Mackey axioms and print the Lewis diagram");
  mchk->add_option("mackey", mackey_file, "Mackey functor file")->required();
  auto* mfix = app.add_subcommand("mackey-fixed", "Categorical fixed points along G -> G/N");
  mfix->add_option("mackey", mackey_file, "Mackey functor file")->required();
  mfix->add_option("--normal", normal, "Order of the normal subgroup N")->required();
  mfix->add_option("--out", out_file, "Output Mackey file (the quotient group goes to <out>.group)");
  auto* ver = app.add_subcommand("verify", "Run a verification: colim-gset, limit-span, colim-span, adjunction, mackey-limit, funcat, all");
  ver->add_option("check", check_name, "Which verification")->required();
  ver->add_option("--group", group_arg, "Group for the adjunction check (default C4)");
  ver->add_option("--normal", normal, "Order of N for the adjunction check");

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--cap", cap, "Size cap for enumerated G-sets")->capture_default_str();
    sub->add_option("--seed", seed, "Seed for sampled checks")->capture_default_str();
    sub->add_option("--tower", tower_arg, "Cyclic tower as <p>,<depth>")->capture_default_str();
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text"}))->capture_default_str();
    sub->add_option("--span-cap", span_cap, "Object and apex size cap for span categories")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*show) {
      cli_detail::group_show(out, *load_group(group_arg));
    } else if (*subs) {
      cli_detail::subgroups(out, *load_group(group_arg));
    } else if (*tomc) {
      cli_detail::tom(out, load_group(group_arg));
    } else if (*burn) {
      cli_detail::burnside(out, load_group(group_arg));
    } else if (*shom) {
      const GSet x = read_gset(gset_x), y = read_gset(gset_y);
      require_same_group(x.group(), y.group(), "span-hom");
      const auto basis = span_basis(x, y);
      out << "X = " << describe(x) << ", Y = " << describe(y) << ": " << basis.size() << " basis spans\n";
      for (const auto& b : basis) {
        out << to_string(b.canonical_key) << " apex " << describe(b.apex) << " left";
        for (Point p : b.legL.values) out << " " << p;
        out << " right";
        for (Point p : b.legR.values) out << " " << p;
        out << "\n";
      }
    } else if (*mchk) {
      const MackeyFunctor m = read_mackey(mackey_file);
      const Verdict v = check_mackey(m);
      out << (v.ok ? "PASS" : "FAIL " + v.witness) << "\n";
      out << lewis_diagram(m).text;
      return v.ok ? 0 : 1;
    } else if (*mfix) {
      const MackeyFunctor m = read_mackey(mackey_file);
      const GroupRef& g = m.group();
      const QuotientMap q = quotient(g, pick_normal(g, normal));
      const MackeyFunctor fp = categorical_fixed_points(m, q);
      const Verdict v = check_mackey(fp);
      out << (v.ok ? "PASS" : "FAIL " + v.witness) << "\n";
      if (out_file.empty()) {
        write_mackey(out, fp, "<quotient>");
      } else {
        const std::string gfile = out_file + ".group";
        std::ofstream gs(gfile), ms(out_file);
        if (!gs || !ms) throw ParseError(out_file, 0, "cannot write output");
        write_group(gs, *q.target);
        write_mackey(ms, fp, std::filesystem::path(gfile).filename().string());
        out << "wrote " << out_file << " and " << gfile << "\n";
      }
      return v.ok ? 0 : 1;
    } else if (*ver) {
      VerifyOptions o;
      o.cap = cap;
      o.seed = seed;
      o.span_cap = span_cap;
      const auto comma = tower_arg.find(',');
      if (comma == std::string::npos) throw InvalidInput("--tower expects <p>,<depth>");
      try {
        o.prime = static_cast<std::uint32_t>(std::stoul(tower_arg.substr(0, comma)));
        o.depth = std::stoul(tower_arg.substr(comma + 1));
      } catch (const std::logic_error&) {
        throw InvalidInput("--tower expects <p>,<depth>");
      }
      if (o.depth == 0 || o.depth > 3) throw InvalidInput("tower depth must be between 1 and 3");
      if (!is_prime(o.prime)) throw NotPrime(std::to_string(o.prime) + " is not prime");
      if (!group_arg.empty()) o.group = load_group(group_arg);
      o.normal_order = normal;
      if (check_name == "all") return cli_detail::emit(out, run_verify_all(o));
      const auto& names = verify_names();
      if (std::find(names.begin(), names.end(), check_name) == names.end()) {
        err << "error: unknown verification '" << check_name << "'\n";
        return 2;
      }
      return cli_detail::emit(out, {run_verify(check_name, o)});
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace prospan
