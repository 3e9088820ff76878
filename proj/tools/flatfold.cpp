#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flatfold/json_io.hpp"

namespace ff = flatfold;

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ff::Error("bad-usage", "cannot open input: " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

ff::CrystGroup load_group(const std::string& path) {
  return ff::group_from_json(ff::parse_json_text(read_input(path)));
}

ff::RatVec parse_coset(const std::string& text, std::size_t dim) {
  ff::RatVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ff::parse_rat(item));
  if (out.size() != dim)
    throw ff::Error("bad-usage", "coset needs " + std::to_string(dim) + " entries");
  return out;
}

// Selector: "fixed", "complement" (of the fixed subspace), a summand index
// into the decomposition, or inline JSON (rows of generators, or a
// subspace document).
ff::Subspace resolve_subspace(const std::string& sel, const ff::CrystGroup& g, long bound) {
  if (sel == "fixed") return ff::fixed_subspace(g).space;
  if (sel == "complement")
    return ff::invariant_complement(ff::fixed_subspace(g).space, g).space;
  if (!sel.empty() && (sel[0] == '{' || sel[0] == '[')) {
    ff::Json j = ff::parse_json_text(sel);
    if (j.is_array()) return ff::Subspace::saturate(ff::rat_mat_from_json(j));
    return ff::subspace_from_json(j);
  }
  if (!sel.empty() && sel.find_first_not_of("0123456789") == std::string::npos) {
    auto dec = ff::minimal_decomposition(g, ff::Subspace::full(g.dim()), bound);
    std::size_t idx = std::stoul(sel);
    if (idx >= dec.summands.size())
      throw ff::Error("bad-usage", "decomposition has only " +
                                       std::to_string(dec.summands.size()) + " summands");
    return dec.summands[idx].space.space;
  }
  throw ff::Error("bad-usage", "unrecognized subspace selector: " + sel);
}

void emit(const ff::Json& j) { std::cout << ff::dump_json(j); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with crystallographic groups and their coset foliations"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string coset_text;
  std::string subspace_sel = "fixed";
  unsigned klein_n = 2;
  std::uint64_t seed = 0;
  long bound = 2;

  auto add_input = [&input](CLI::App* cmd) {
    cmd->add_option("input", input, "group JSON document (- for stdin)");
  };
  auto add_subspace = [&subspace_sel](CLI::App* cmd) {
    cmd->add_option("--subspace", subspace_sel,
                    "fixed | complement | summand index | inline JSON");
  };
  auto add_bound = [&bound](CLI::App* cmd) {
    cmd->add_option("--bound", bound, "sup-norm bound for the invariant-subspace sweep");
  };
  auto add_seed = [&seed](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "seed for basepoint draws");
  };

  auto* c_klein = app.add_subcommand("klein", "emit the n-fold generalized Klein bottle");
  c_klein->add_option("-n,--order", klein_n, "fold count, at least 2")->required();

  auto* c_verify = app.add_subcommand("verify", "re-derive the structural invariants of a group");
  add_input(c_verify);

  auto* c_reduce = app.add_subcommand("reduce", "search for a proper invariant subspace");
  add_input(c_reduce);
  add_bound(c_reduce);

  auto* c_complement = app.add_subcommand("complement", "invariant complement of a subspace");
  add_input(c_complement);
  add_subspace(c_complement);
  add_bound(c_complement);

  auto* c_decompose = app.add_subcommand("decompose", "split into invariant summands");
  add_input(c_decompose);
  add_bound(c_decompose);

  auto* c_stab = app.add_subcommand("stabilizer", "stabilizer of a coset leaf");
  add_input(c_stab);
  add_subspace(c_stab);
  add_bound(c_stab);
  c_stab->add_option("--coset", coset_text, "basepoint, comma-separated rationals")->required();

  auto* c_leaf = app.add_subcommand("leaf", "flat structure of a coset leaf");
  add_input(c_leaf);
  add_subspace(c_leaf);
  add_bound(c_leaf);
  c_leaf->add_option("--coset", coset_text, "basepoint, comma-separated rationals")->required();

  auto* c_generic = app.add_subcommand("generic-coset", "find a leaf with minimal stabilizer");
  add_input(c_generic);
  add_subspace(c_generic);
  add_bound(c_generic);
  add_seed(c_generic);

  auto* c_orbifold = app.add_subcommand("orbifold", "crystallographic data of the leaf space");
  add_input(c_orbifold);
  add_subspace(c_orbifold);
  add_bound(c_orbifold);

  auto* c_intersect = app.add_subcommand("intersect",
                                         "count intersections of complementary generic leaves");
  add_input(c_intersect);
  add_subspace(c_intersect);
  add_bound(c_intersect);
  add_seed(c_intersect);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    ff::Json err;
    err["error"]["code"] = "bad-usage";
    err["error"]["message"] = e.what();
    emit(err);
    return 1;
  }

  int rc = 0;
  try {
    if (c_klein->parsed()) {
      emit(ff::klein_to_json(ff::build_klein(klein_n)));
    } else if (c_verify->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::CrystReport rep = ff::verify_cryst(g);
      ff::TorsionResult tors = ff::is_torsion_free(g);
      ff::Json out = ff::report_to_json(rep);
      out["torsion_free"] = tors.torsion_free;
      if (!tors.torsion_free) {
        out["torsion_witness"]["element"] = tors.witness_element;
        out["torsion_witness"]["lambda"] = ff::vec_to_json(tors.witness_lambda);
      }
      out["orientable"] = ff::is_orientable(g);
      out["order"] = g.order();
      out["group"] = ff::group_to_json(g);
      emit(out);
      if (!rep.passed || !tors.torsion_free) rc = 2;
    } else if (c_reduce->parsed()) {
      ff::CrystGroup g = load_group(input);
      auto found = ff::find_proper_invariant(g, bound);
      ff::Json out;
      out["found"] = found.has_value();
      out["bound"] = bound;
      if (found) out["subspace"] = ff::subspace_to_json(found->space);
      emit(out);
    } else if (c_complement->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::Subspace v = resolve_subspace(subspace_sel, g, bound);
      ff::Json out;
      out["subspace"] = ff::subspace_to_json(v);
      out["complement"] = ff::subspace_to_json(ff::invariant_complement(v, g).space);
      emit(out);
    } else if (c_decompose->parsed()) {
      ff::CrystGroup g = load_group(input);
      emit(ff::decomposition_to_json(
          ff::minimal_decomposition(g, ff::Subspace::full(g.dim()), bound)));
    } else if (c_stab->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::CosetLeaf leaf{resolve_subspace(subspace_sel, g, bound),
                        parse_coset(coset_text, g.dim())};
      ff::Json out;
      out["subspace"] = ff::subspace_to_json(leaf.vprime);
      out["basepoint"] = ff::vec_to_json(leaf.basepoint);
      out["stabilizer"] = ff::stabilizer_to_json(ff::coset_stabilizer(leaf, g), g);
      out["generic"] = ff::is_generic(leaf, g);
      emit(out);
    } else if (c_leaf->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::CosetLeaf leaf{resolve_subspace(subspace_sel, g, bound),
                        parse_coset(coset_text, g.dim())};
      ff::Json out;
      out["subspace"] = ff::subspace_to_json(leaf.vprime);
      out["basepoint"] = ff::vec_to_json(leaf.basepoint);
      out["sequence"] = ff::leaf_sequence_to_json(ff::leaf_exact_sequence(leaf, g));
      emit(out);
    } else if (c_generic->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::Subspace v = resolve_subspace(subspace_sel, g, bound);
      ff::CosetLeaf leaf = ff::find_generic_coset(v, g, seed);
      ff::Json out;
      out["subspace"] = ff::subspace_to_json(v);
      out["basepoint"] = ff::vec_to_json(leaf.basepoint);
      out["generic"] = true;
      emit(out);
    } else if (c_orbifold->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::Subspace v = resolve_subspace(subspace_sel, g, bound);
      ff::Json out = ff::orbifold_to_json(ff::leaf_space_orbifold(v, g));
      emit(out);
    } else if (c_intersect->parsed()) {
      ff::CrystGroup g = load_group(input);
      ff::Subspace vp = resolve_subspace(subspace_sel, g, bound);
      ff::Subspace vs = ff::invariant_complement(vp, g).space;
      ff::ComplementaryPair pair{ff::find_generic_coset(vp, g, seed),
                                 ff::find_generic_coset(vs, g, seed + 1)};
      ff::PairReport rep = ff::validate_pair(pair, g);
      ff::Json out;
      out["vprime"] = ff::subspace_to_json(vp);
      out["vsecond"] = ff::subspace_to_json(vs);
      out["basepoint_a"] = ff::vec_to_json(pair.leaf_a.basepoint);
      out["basepoint_b"] = ff::vec_to_json(pair.leaf_b.basepoint);
      out["validation"] = ff::pair_report_to_json(rep);
      if (!rep.passed) {
        emit(out);
        rc = 2;
      } else {
        ff::IntersectionReport ir = ff::leaf_intersection_count(pair, g);
        out["intersection"] = ff::intersection_to_json(ir);
        out["inclusion"] = ff::inclusion_to_json(ff::intersection_inclusion_map(pair, g));
        emit(out);
        if (!ir.oracle_consistent) rc = 2;
      }
    }
  } catch (const ff::Error& e) {
    ff::Json err;
    err["error"]["code"] = e.code();
    err["error"]["message"] = e.what();
    emit(err);
    return 1;
  }
  return rc;
}
