#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rumple/abelian.hpp"
#include "rumple/affine.hpp"
#include "rumple/errors.hpp"
#include "rumple/extensions.hpp"
#include "rumple/io.hpp"
#include "rumple/iso.hpp"
#include "rumple/magma.hpp"
#include "rumple/permgroup.hpp"
#include "rumple/search.hpp"
#include "rumple/yangbaxter.hpp"

using json = nlohmann::ordered_json;
using namespace rumple;

namespace {

// Exit codes: 0 = affirmative, 1 = negative but well-formed, 2 = bad input.
constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json magma_to_json(const Magma& X) {
  json rows = json::array();
  for (int x = 0; x < X.n; ++x) {
    json row = json::array();
    for (int y = 0; y < X.n; ++y) row.push_back(X.at(x, y));
    rows.push_back(std::move(row));
  }
  return json{{"order", X.n}, {"table", std::move(rows)}};
}

Magma magma_from_json(const json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    fail(errc::parse_error, "magma JSON needs {\"order\", \"table\"}");
  int n = j.at("order").get<int>();
  std::vector<std::vector<int>> rows = j.at("table").get<std::vector<std::vector<int>>>();
  return from_table(n, rows);
}

// Table files are .mag text or a JSON object; sniff by the first byte.
Magma load_table(const std::string& path) {
  std::string text = read_file(path);
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{') {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse_error, "invalid JSON in " + path);
    return magma_from_json(j);
  }
  return parse_mag_string(text);
}

json matrix_to_json(const Matrix& M) { return json(M); }

Matrix matrix_from_json(const json& j) { return j.get<Matrix>(); }

json affine_to_json(const AffineDatum& D) {
  return json{{"factors", D.group.factors},
              {"phi", matrix_to_json(D.phi)},
              {"psi", matrix_to_json(D.psi)},
              {"c", D.c}};
}

AffineDatum affine_from_json(const json& j) {
  if (!j.is_object() || !j.contains("factors") || !j.contains("phi") || !j.contains("psi") ||
      !j.contains("c"))
    fail(errc::parse_error, "affine JSON needs {\"factors\", \"phi\", \"psi\", \"c\"}");
  AffineDatum D;
  D.group.factors = j.at("factors").get<std::vector<int>>();
  D.phi = matrix_from_json(j.at("phi"));
  D.psi = matrix_from_json(j.at("psi"));
  D.c = j.at("c").get<Tuple>();
  return D;
}

json cocycle_to_json(const Cocycle& th) {
  json outer = json::array();
  for (const auto& row : th.values) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v);
    outer.push_back(std::move(r));
  }
  return outer;
}

json extension_to_json(const ExtensionDatum& E) {
  return json{{"factors", E.group.factors},
              {"phi", matrix_to_json(E.phi)},
              {"psi", matrix_to_json(E.psi)},
              {"base", magma_to_json(E.base)},
              {"theta", cocycle_to_json(E.theta)}};
}

json solution_to_json(const SetSolution& s) {
  json r1 = json::array(), r2 = json::array();
  for (int x = 0; x < s.n; ++x) {
    json a = json::array(), b = json::array();
    for (int y = 0; y < s.n; ++y) {
      a.push_back(s.first(x, y));
      b.push_back(s.second(x, y));
    }
    r1.push_back(std::move(a));
    r2.push_back(std::move(b));
  }
  return json{{"n", s.n}, {"r1", std::move(r1)}, {"r2", std::move(r2)}};
}

SetSolution solution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("r1") || !j.contains("r2"))
    fail(errc::parse_error, "solution JSON needs {\"n\", \"r1\", \"r2\"}");
  int n = j.at("n").get<int>();
  auto flatten = [n](const json& rows, const char* name) {
    std::vector<int> flat;
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
      fail(errc::parse_error, std::string(name) + " must be an n x n array");
    for (const auto& row : rows) {
      std::vector<int> r = row.get<std::vector<int>>();
      if (r.size() != static_cast<std::size_t>(n))
        fail(errc::parse_error, std::string(name) + " must be an n x n array");
      for (int v : r) {
        if (v < 0 || v >= n) fail(errc::parse_error, std::string(name) + " entry out of range");
        flat.push_back(v);
      }
    }
    return flat;
  };
  SetSolution s;
  s.n = n;
  s.r1 = flatten(j.at("r1"), "r1");
  s.r2 = flatten(j.at("r2"), "r2");
  return s;
}

SetSolution load_solution(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "invalid JSON in " + path);
  return solution_from_json(j);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    atomic_write_file(out_path, text);
}

std::optional<std::uint64_t> node_cap_from_env() {
  const char* s = std::getenv("RUMPLE_NODE_CAP");
  if (!s || !*s) return std::nullopt;
  return std::strtoull(s, nullptr, 10);
}

json group_summary(const PermGroup& G) {
  return json{{"order", G.order()},
              {"abelian", is_abelian(G)},
              {"transitive", is_transitive(G)},
              {"regular", is_regular(G)},
              {"solvable", is_solvable(G)}};
}

int cmd_verify(const std::string& path, bool as_json) {
  Magma X = load_table(path);
  json predicates = json::object();
  json groups = json::object();
  std::vector<std::string> notes;

  bool lq = is_left_quasigroup(X);
  bool qg = is_quasigroup(X);
  bool rl = satisfies_left_rump(X);
  bool rr = satisfies_right_rump(X);
  bool u2d = is_uniquely_2_divisible(X);
  bool rumple_p = is_rumple(X);
  predicates["left_quasigroup"] = lq;
  predicates["quasigroup"] = qg;
  predicates["left_rump"] = rl;
  predicates["right_rump"] = rr;
  predicates["uniquely_2_divisible"] = u2d;
  predicates["rack"] = is_rack(X);
  predicates["quandle"] = is_quandle(X);
  predicates["two_reductive"] = is_2_reductive(X);
  predicates["delta_bijective"] = is_delta_bijective(X);
  predicates["rumple"] = rumple_p;
  predicates["latin_rumple"] = is_latin_rumple(X);
  predicates["both_sided_rumple"] = is_both_sided_rumple(X);

  if (rumple_p) {
    SetSolution s = rumple_to_solution(X);
    predicates["yb"] = satisfies_yb(s);
    predicates["involutive"] = is_involutive(s);
    predicates["nondegenerate"] = is_left_nondegenerate(s) && is_right_nondegenerate(s);
    predicates["yb_round_trip"] = solution_to_rumple(s) == X;
    auto witness = is_biquandle(s);
    predicates["biquandle"] = witness.has_value();
    if (witness) {
      std::ostringstream w;
      w << "biquandle witness t =";
      for (int i = 0; i < X.n; ++i) w << " " << (*witness)[i];
      notes.push_back(w.str());
    }
  } else {
    notes.push_back("not a rumple: derived solution and round trip skipped");
  }

  if (lq) {
    PermGroup D = dis(X);
    groups["lmlt"] = group_summary(lmlt(X));
    groups["dis"] = group_summary(D);
    groups["dis_plus"] = group_summary(dis_plus(X));
    groups["dis_minus"] = group_summary(dis_minus(X));
    if (qg) groups["mlt"] = group_summary(mlt(X));
  } else {
    notes.push_back("not a left quasigroup: translation groups skipped");
  }

  if (qg && rumple_p) {
    predicates["affine"] = is_affine(X);
    predicates["group_isotopic"] = is_group_isotopic(X);
    predicates["abelian_group_isotopic"] = is_abelian_group_isotopic(X);
    if (auto D = affinize(X)) {
      std::ostringstream w;
      w << "affine over Z";
      for (std::size_t i = 0; i < D->group.factors.size(); ++i)
        w << (i ? " x Z" : "") << D->group.factors[i];
      notes.push_back(w.str());
    }
  }

  json report{{"subject", path}, {"predicates", predicates}, {"groups", groups}, {"notes", notes}};
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "subject: " << path << "\n";
    for (auto& [k, v] : predicates.items())
      std::cout << "  " << k << ": " << (v.get<bool>() ? "yes" : "no") << "\n";
    for (auto& [k, v] : groups.items())
      std::cout << "  " << k << ": order " << v["order"].get<std::size_t>()
                << (v["abelian"].get<bool>() ? ", abelian" : ", nonabelian")
                << (v["transitive"].get<bool>() ? ", transitive" : "")
                << (v["regular"].get<bool>() ? ", regular" : "")
                << (v["solvable"].get<bool>() ? ", solvable" : "") << "\n";
    for (const auto& n : notes) std::cout << "  note: " << n << "\n";
  }
  return rumple_p ? kYes : kNo;
}

json class_record(const Magma& M) {
  json rec = magma_to_json(M);
  rec["latin"] = is_quasigroup(M);
  rec["affine"] = rec["latin"].get<bool>() && is_affine(M);
  return rec;
}

std::vector<std::uint64_t> read_checkpoint(const std::string& path) {
  std::vector<std::uint64_t> ids;
  std::ifstream in(path);
  if (!in) return ids;  // first run: nothing done yet
  std::uint64_t id;
  while (in >> id) ids.push_back(id);
  return ids;
}

int cmd_enumerate(int order, bool latin, bool count_only, int workers, const std::string& out_path,
                  const std::string& checkpoint, bool as_json) {
  SearchConfig cfg;
  cfg.order = order;
  cfg.latin_only = latin;
  cfg.count_only = count_only;
  cfg.worker_count = workers;
  cfg.node_cap = node_cap_from_env();

  if (checkpoint.empty()) {
    SearchResult res = latin ? enumerate_latin_rumples(cfg) : enumerate_rumples(cfg);
    if (count_only) {
      if (as_json) {
        json summary{{"order", order}, {"latin", latin}, {"count", res.count}, {"nodes", res.nodes}};
        emit(summary.dump() + "\n", out_path);
      } else {
        emit(std::to_string(res.count) + "\n", out_path);
      }
    } else {
      std::ostringstream lines;
      for (const auto& M : res.tables) lines << class_record(M).dump() << "\n";
      emit(lines.str(), out_path);
    }
    return kYes;
  }

  // Checkpointed run: stream one line per class (or one count line per task)
  // and append the finished task id; a rerun skips everything listed.
  if (out_path.empty()) fail(errc::parse_error, "--checkpoint needs --out to stream results into");
  std::vector<std::uint64_t> done = read_checkpoint(checkpoint);
  std::uint64_t prior = 0;
  if (count_only && !done.empty()) {
    std::ifstream in(out_path);
    json rec;
    std::string line;
    while (std::getline(in, line)) {
      rec = json::parse(line, nullptr, false);
      if (!rec.is_discarded() && rec.contains("task") && rec.contains("count"))
        prior += rec["count"].get<std::uint64_t>();
    }
  }
  std::ofstream out(out_path, std::ios::app);
  std::ofstream ck(checkpoint, std::ios::app);
  if (!out || !ck) fail(errc::parse_error, "cannot open output or checkpoint file for append");
  TaskObserver observer = [&](const TaskReport& rep) {
    if (count_only) {
      if (rep.count) out << json{{"task", rep.task_id}, {"count", rep.count}}.dump() << "\n";
    } else {
      for (const auto& M : rep.tables) out << class_record(M).dump() << "\n";
    }
    out.flush();
    ck << rep.task_id << "\n";
    ck.flush();
  };
  SearchResult res = latin ? enumerate_latin_rumples(cfg, observer, done)
                           : enumerate_rumples(cfg, observer, done);
  if (count_only) {
    // the stream holds only per-task records, so a later resume can re-total
    if (as_json)
      std::cout << json{{"order", order}, {"latin", latin}, {"count", prior + res.count}}.dump()
                << "\n";
    else
      std::cout << prior + res.count << "\n";
  }
  return kYes;
}

AbelianGroup parse_group(const std::vector<int>& factors) {
  for (int f : factors)
    if (f < 2) fail(errc::parse_error, "group factors must be at least 2");
  return AbelianGroup{factors};
}

int cmd_affine_enumerate(const std::vector<int>& factors, bool count_only,
                         const std::string& out_path, bool as_json) {
  AbelianGroup G = parse_group(factors);
  std::vector<AffineDatum> classes = enumerate_affine_latin(G);
  if (count_only) {
    if (as_json)
      emit(json{{"factors", G.factors}, {"count", classes.size()}}.dump() + "\n", out_path);
    else
      emit(std::to_string(classes.size()) + "\n", out_path);
    return kYes;
  }
  std::ostringstream lines;
  for (const auto& D : classes) lines << affine_to_json(D).dump() << "\n";
  emit(lines.str(), out_path);
  return kYes;
}

int cmd_affine_check(const std::string& path, bool as_json) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "invalid JSON in " + path);
  AffineDatum D = affine_from_json(j);
  check_compatible(D.group, D.phi);
  check_compatible(D.group, D.psi);
  bool rump = rump_condition(D.group, D.phi, D.psi);
  AffineFlags flags = aff_flags(D);
  bool latin = rump && flags.phi_automorphism && flags.psi_automorphism;
  json report{{"subject", path},
              {"rump_condition", rump},
              {"phi_automorphism", flags.phi_automorphism},
              {"psi_automorphism", flags.psi_automorphism},
              {"latin", latin}};
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << "rump_condition: " << (rump ? "yes" : "no") << "\nlatin: "
              << (latin ? "yes" : "no") << "\n";
  return rump && flags.psi_automorphism ? kYes : kNo;
}

int cmd_affine_isomorphic(const std::string& a, const std::string& b, bool as_json) {
  auto load = [](const std::string& p) {
    json j = json::parse(read_file(p), nullptr, false);
    if (j.is_discarded()) fail(errc::parse_error, "invalid JSON in " + p);
    return affine_from_json(j);
  };
  AffineDatum A = load(a), B = load(b);
  auto witness = drapal_isomorphic(A, B);
  if (as_json) {
    json rec{{"isomorphic", witness.has_value()}};
    if (witness) {
      rec["alpha"] = matrix_to_json(witness->first);
      rec["shift"] = witness->second;
    }
    std::cout << rec.dump(2) << "\n";
  } else {
    std::cout << (witness ? "isomorphic" : "not isomorphic") << "\n";
  }
  return witness ? kYes : kNo;
}

int cmd_affinize(const std::string& path, const std::string& out_path) {
  Magma X = load_table(path);
  if (!is_latin_rumple(X)) {
    std::cerr << "input is not a latin rumple\n";
    return kNo;
  }
  auto D = affinize(X);
  if (!D) {
    std::cerr << "latin rumple is not affine (displacement group obstruction)\n";
    return kNo;
  }
  emit(affine_to_json(*D).dump(2) + "\n", out_path);
  return kYes;
}

int cmd_extend_klein(const std::string& path, const std::string& out_path) {
  Magma F = load_table(path);
  ExtensionDatum E = klein_extension(F);
  emit(extension_to_json(E).dump(2) + "\n", out_path);
  return kYes;
}

Matrix parse_matrix(const std::string& text) {
  Matrix M;
  std::istringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> r;
    std::istringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        r.push_back(std::stoi(cell));
      } catch (const std::exception&) {
        fail(errc::parse_error, "matrix entry \"" + cell + "\" is not an integer");
      }
    }
    if (!M.empty() && M.back().size() != r.size())
      fail(errc::parse_error, "matrix rows have unequal lengths");
    M.push_back(std::move(r));
  }
  if (M.empty()) fail(errc::parse_error, "empty matrix");
  return M;
}

int cmd_extend_solve(const std::vector<int>& factors, const std::string& base_path,
                     const std::string& phi_text, const std::string& psi_text,
                     const std::string& out_path) {
  AbelianGroup G = parse_group(factors);
  Magma F = load_table(base_path);
  Matrix phi = parse_matrix(phi_text), psi = parse_matrix(psi_text);
  std::vector<Cocycle> basis = solve_cocycles(G, F, phi, psi);
  json rec{{"factors", G.factors},
           {"phi", matrix_to_json(phi)},
           {"psi", matrix_to_json(psi)},
           {"base", magma_to_json(F)},
           {"dimension", basis.size()}};
  json arr = json::array();
  for (const auto& th : basis) arr.push_back(cocycle_to_json(th));
  rec["basis"] = std::move(arr);
  emit(rec.dump(2) + "\n", out_path);
  return kYes;
}

int cmd_extend_search(const std::vector<int>& factors, const std::string& base_path,
                      const std::string& phi_text, const std::string& psi_text,
                      std::size_t max_vectors, const std::string& out_path) {
  AbelianGroup G = parse_group(factors);
  Magma F = load_table(base_path);
  Matrix phi = parse_matrix(phi_text), psi = parse_matrix(psi_text);
  std::vector<ExtensionSurvey> surveys = survey_extensions(G, F, phi, psi, max_vectors);
  std::size_t nonabelian16 = 0, abelian_nonnormal = 0, nonaffine = 0, nonnilpotent = 0,
              right_rump_nongroup = 0;
  for (const auto& s : surveys) {
    if (s.dis_hamiltonian && s.dis_order == 16) ++nonabelian16;
    if (s.dis_abelian && !s.affine) ++abelian_nonnormal;
    if (!s.affine) ++nonaffine;
    if (!s.dis_nilpotent) ++nonnilpotent;
    if (s.right_rump && !s.group_isotopic) ++right_rump_nongroup;
  }
  json rec{{"vectors_examined", surveys.size()},
           {"dis_hamiltonian_order16", nonabelian16},
           {"dis_abelian_not_normal", abelian_nonnormal},
           {"not_affine", nonaffine},
           {"dis_not_nilpotent", nonnilpotent},
           {"right_rump_not_group_isotopic", right_rump_nongroup}};
  emit(rec.dump(2) + "\n", out_path);
  return kYes;
}

int cmd_dual(const std::string& path, const std::string& out_path) {
  emit(to_mag(dual_rumple(load_table(path))), out_path);
  return kYes;
}

int cmd_opposite(const std::string& path, const std::string& out_path) {
  emit(to_mag(opposite(load_table(path))), out_path);
  return kYes;
}

int cmd_isotope(const std::string& path, int e, int f, const std::string& out_path) {
  emit(to_mag(principal_loop_isotope(load_table(path), e, f)), out_path);
  return kYes;
}

int cmd_yb_check(const std::string& path, bool as_json) {
  SetSolution s = load_solution(path);
  bool yb = satisfies_yb(s);
  bool invol = is_involutive(s);
  bool nondeg = is_left_nondegenerate(s) && is_right_nondegenerate(s);
  bool bij = is_bijective(s);
  auto witness = is_biquandle(s);
  json rec{{"subject", path},    {"yb", yb},
           {"bijective", bij},   {"involutive", invol},
           {"nondegenerate", nondeg}, {"biquandle", witness.has_value()}};
  if (as_json)
    std::cout << rec.dump(2) << "\n";
  else
    std::cout << "yb: " << (yb ? "yes" : "no") << "\ninvolutive: " << (invol ? "yes" : "no")
              << "\nnondegenerate: " << (nondeg ? "yes" : "no") << "\n";
  return yb && bij && nondeg ? kYes : kNo;
}

int cmd_yb_from(const std::string& path, const std::string& out_path) {
  Magma X = load_table(path);
  if (!is_rumple(X)) {
    std::cerr << "input is not a rumple\n";
    return kNo;
  }
  emit(solution_to_json(rumple_to_solution(X)).dump(2) + "\n", out_path);
  return kYes;
}

int cmd_yb_to(const std::string& path, const std::string& out_path) {
  emit(to_mag(solution_to_rumple(load_solution(path))), out_path);
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite rumples: verification, enumeration, affine and extension machinery"};
  app.require_subcommand(1);

  std::string path, path_b, out_path, checkpoint;
  std::string phi_text, psi_text, base_path;
  std::vector<int> factors;
  bool as_json = false, latin = false, count_only = false;
  int order = 0, workers = 1, iso_e = 0, iso_f = 0;
  std::size_t max_vectors = 512;

  auto* verify = app.add_subcommand("verify", "full predicate report on a table file");
  verify->add_option("path", path)->required();
  verify->add_flag("--json", as_json);

  auto* enumerate = app.add_subcommand("enumerate", "enumerate rumples up to isomorphism");
  enumerate->add_option("--order", order)->required();
  enumerate->add_flag("--latin", latin);
  enumerate->add_flag("--count-only", count_only);
  enumerate->add_flag("--json", as_json);
  enumerate->add_option("--workers", workers);
  enumerate->add_option("--out", out_path);
  enumerate->add_option("--checkpoint", checkpoint);

  auto* affine = app.add_subcommand("affine", "affine rumples over an abelian group");
  affine->require_subcommand(1);
  auto* aff_enum = affine->add_subcommand("enumerate", "one datum per isomorphism class");
  aff_enum->add_option("--group", factors, "comma list of cyclic factors")
      ->required()
      ->delimiter(',');
  aff_enum->add_flag("--count-only", count_only);
  aff_enum->add_flag("--json", as_json);
  aff_enum->add_option("--out", out_path);
  auto* aff_check = affine->add_subcommand("check", "validate an affine datum");
  aff_check->add_option("path", path)->required();
  aff_check->add_flag("--json", as_json);
  auto* aff_iso = affine->add_subcommand("isomorphic", "Aut-conjugacy test for two data");
  aff_iso->add_option("a", path)->required();
  aff_iso->add_option("b", path_b)->required();
  aff_iso->add_flag("--json", as_json);

  auto* affinize_cmd = app.add_subcommand("affinize", "recover an affine datum from a table");
  affinize_cmd->add_option("path", path)->required();
  affinize_cmd->add_option("--out", out_path);

  auto* extend = app.add_subcommand("extend", "central extensions over a base rumple");
  extend->require_subcommand(1);
  auto* ext_klein = extend->add_subcommand("klein", "the Klein-square extension datum");
  ext_klein->add_option("path", path)->required();
  ext_klein->add_option("--out", out_path);
  auto* ext_solve = extend->add_subcommand("solve", "basis of the cocycle solution space");
  ext_solve->add_option("--group", factors)->required()->delimiter(',');
  ext_solve->add_option("--base", base_path)->required();
  ext_solve->add_option("--phi", phi_text, "rows split by ';', entries by ','")->required();
  ext_solve->add_option("--psi", psi_text)->required();
  ext_solve->add_option("--out", out_path);
  auto* ext_search = extend->add_subcommand("search-witness", "scan the cocycle space for"
                                            " displacement-group phenomena");
  ext_search->add_option("--group", factors)->required()->delimiter(',');
  ext_search->add_option("--base", base_path)->required();
  ext_search->add_option("--phi", phi_text)->required();
  ext_search->add_option("--psi", psi_text)->required();
  ext_search->add_option("--max", max_vectors);
  ext_search->add_option("--out", out_path);

  auto* dual = app.add_subcommand("dual", "dual rumple of a table");
  dual->add_option("path", path)->required();
  dual->add_option("--out", out_path);

  auto* oppo = app.add_subcommand("opposite", "transposed table");
  oppo->add_option("path", path)->required();
  oppo->add_option("--out", out_path);

  auto* isotope = app.add_subcommand("isotope", "principal loop isotope at (e, f)");
  isotope->add_option("path", path)->required();
  isotope->add_option("--e", iso_e)->required();
  isotope->add_option("--f", iso_f)->required();
  isotope->add_option("--out", out_path);

  auto* yb = app.add_subcommand("yb", "set-theoretic solution correspondence");
  yb->require_subcommand(1);
  auto* yb_check = yb->add_subcommand("check", "predicate battery on a solution file");
  yb_check->add_option("path", path)->required();
  yb_check->add_flag("--json", as_json);
  auto* yb_from = yb->add_subcommand("from", "solution derived from a rumple table");
  yb_from->add_option("path", path)->required();
  yb_from->add_option("--out", out_path);
  auto* yb_to = yb->add_subcommand("to", "rumple table recovered from a solution");
  yb_to->add_option("path", path)->required();
  yb_to->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(path, as_json);
    if (enumerate->parsed())
      return cmd_enumerate(order, latin, count_only, workers, out_path, checkpoint, as_json);
    if (aff_enum->parsed()) return cmd_affine_enumerate(factors, count_only, out_path, as_json);
    if (aff_check->parsed()) return cmd_affine_check(path, as_json);
    if (aff_iso->parsed()) return cmd_affine_isomorphic(path, path_b, as_json);
    if (affinize_cmd->parsed()) return cmd_affinize(path, out_path);
    if (ext_klein->parsed()) return cmd_extend_klein(path, out_path);
    if (ext_solve->parsed())
      return cmd_extend_solve(factors, base_path, phi_text, psi_text, out_path);
    if (ext_search->parsed())
      return cmd_extend_search(factors, base_path, phi_text, psi_text, max_vectors, out_path);
    if (dual->parsed()) return cmd_dual(path, out_path);
    if (oppo->parsed()) return cmd_opposite(path, out_path);
    if (isotope->parsed()) return cmd_isotope(path, iso_e, iso_f, out_path);
    if (yb_check->parsed()) return cmd_yb_check(path, as_json);
    if (yb_from->parsed()) return cmd_yb_from(path, out_path);
    if (yb_to->parsed()) return cmd_yb_to(path, out_path);
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code) {
      case errc::parse_error:
      case errc::dimension_mismatch:
      case errc::entry_out_of_range:
      case errc::bound_exceeded:
        return kUsage;
      default:
        return kNo;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
