#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stabext/suites.hpp"

namespace fs = std::filesystem;
using namespace stabext;

namespace {

void emit(const json& j, const std::string& json_out) {
  std::cout << j.dump(2) << "\n";
  if (!json_out.empty()) write_json_file(json_out, j);
}

int fail_input(const IoError& e) {
  json j;
  j["error"] = "input";
  j["file"] = e.file;
  j["field"] = e.field;
  j["message"] = e.what();
  std::cerr << j.dump(2) << "\n";
  return 2;
}

std::string corpus_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("STABEXT_CORPUS")) return env;
  return "corpus";
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

/// Write the full fixture set as JSON documents plus an index.
json write_corpus(const std::string& dir) {
  fs::create_directories(dir);
  Corpus c = standard_corpus();
  json index = json::array();
  auto entry = [&](const AlgebraPtr& alg, const std::vector<ModulePtr>& mods,
                   const json& expected, const std::string& notes) {
    std::string afile = "alg_" + slug(alg->name) + ".json";
    write_json_file(dir + "/" + afile, algebra_to_json(*alg));
    json e;
    e["algebra"] = afile;
    json mfiles = json::array();
    for (const auto& m : mods) {
      std::string mfile = "mod_" + slug(alg->name) + "_" + slug(m->name) + ".json";
      write_json_file(dir + "/" + mfile, module_to_json(*m));
      mfiles.push_back(mfile);
    }
    e["modules"] = std::move(mfiles);
    std::string xfile = "expected_" + slug(alg->name) + ".json";
    write_json_file(dir + "/" + xfile, expected);
    e["expected"] = xfile;
    e["notes"] = notes;
    index.push_back(std::move(e));
  };

  auto claim = [](const std::string& mod, const std::string& what, const json& value,
                  const std::string& prov) {
    json c;
    c["module"] = mod;
    c["claim"] = what;
    c["value"] = value;
    c["provenance"] = prov;
    return c;
  };

  entry(c.f2x2, {c.S},
        json::array({claim("S", "extdeg", json{{"verdict", "Infinite"}, {"period", 1}},
                           "periodicity certificate")}),
        "smallest local symmetric algebra; the simple has syzygy period 1");
  entry(c.f3x3, {c.M1, c.M2},
        json::array({claim("M1", "extdeg", json{{"verdict", "Infinite"}, {"period", 2}},
                           "periodicity certificate"),
                     claim("M2", "extdeg", json{{"verdict", "Infinite"}, {"period", 2}},
                           "periodicity certificate")}),
        "truncated polynomial algebra; both nonprojective indecomposables are periodic");
  entry(c.c2, {}, json::array(),
        "group algebra of the cyclic group of order 2; isomorphic to F2[x]/(x^2)");
  entry(c.klein, {c.k_klein},
        json::array({claim("S1", "extdeg", json{{"verdict", "Infinite"}},
                           "periodicity certificate")}),
        "group algebra of the Klein four group; decomposition stress entry, no "
        "component-shape claims asserted");
  entry(c.nakayama, {c.n1, c.n2},
        json::array({claim("S1", "extdeg", json{{"verdict", "Infinite"}},
                           "periodicity certificate"),
                     claim("S2", "extdeg", json{{"verdict", "Infinite"}},
                           "periodicity certificate")}),
        "two-vertex symmetric Nakayama algebra with Loewy length 3");
  entry(c.ls, {c.ls_m},
        json::array({claim("M", "extdeg", json{{"verdict", "Finite"}, {"m", 1}},
                           c.ls_provenance)}),
        "8-dimensional local symmetric q-exterior algebra over the rationals, q=2");

  json idx;
  idx["entries"] = std::move(index);
  write_json_file(dir + "/index.json", idx);
  return idx;
}

/// Validate one file (algebra or module) or a whole corpus directory.
int cmd_validate(const std::string& path, const std::string& cdir, const std::string& json_out) {
  json report = json::array();
  auto check_algebra_file = [&](const std::string& p) -> AlgebraPtr {
    AlgebraPtr a = load_algebra_file(p);
    json r;
    r["file"] = p;
    r["kind"] = "algebra";
    r["name"] = a->name;
    r["ok"] = true;
    report.push_back(std::move(r));
    return a;
  };
  if (fs::is_directory(path)) {
    json idx = read_json_file(path + "/index.json");
    for (const auto& e : idx["entries"]) {
      AlgebraPtr a = check_algebra_file(path + "/" + e["algebra"].get<std::string>());
      for (const auto& mf : e["modules"]) {
        std::string mp = path + "/" + mf.get<std::string>();
        ModulePtr m = load_module_file(mp, a);
        json r;
        r["file"] = mp;
        r["kind"] = "module";
        r["name"] = m->name;
        r["ok"] = true;
        report.push_back(std::move(r));
      }
    }
  } else {
    json j = read_json_file(path);
    if (j.contains("table")) {
      check_algebra_file(path);
    } else if (j.contains("action")) {
      // resolve the referenced algebra through the corpus index
      std::string want = j.value("algebra", "");
      AlgebraPtr a;
      json idx = read_json_file(corpus_dir(cdir) + "/index.json");
      for (const auto& e : idx["entries"]) {
        std::string ap = corpus_dir(cdir) + "/" + e["algebra"].get<std::string>();
        AlgebraPtr cand = load_algebra_file(ap);
        if (cand->name == want) {
          a = cand;
          break;
        }
      }
      if (!a) throw IoError(path, "algebra", "referenced algebra '" + want + "' not in corpus");
      ModulePtr m = load_module_file(path, a);
      json r;
      r["file"] = path;
      r["kind"] = "module";
      r["name"] = m->name;
      r["ok"] = true;
      report.push_back(std::move(r));
    } else {
      throw IoError(path, "(root)", "neither an algebra nor a module document");
    }
  }
  json out;
  out["validated"] = std::move(report);
  emit(out, json_out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabext: stable cohomology and extension-degree workbench"};
  app.require_subcommand(1);

  long window = 20, guard = 8;
  size_t radius = 4;
  uint64_t seed = 0;
  bool accept_probable = false;
  std::string json_out, cdir;
  app.add_option("--window", window, "resolution window")->capture_default_str();
  app.add_option("--guard", guard, "consecutive zero degrees required for a Finite verdict")
      ->capture_default_str();
  app.add_option("--radius", radius, "component build radius")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized searches")->capture_default_str();
  app.add_flag("--accept-probable", accept_probable,
               "treat probable indecomposability certificates as acceptable");
  app.add_option("--json-out", json_out, "also write the JSON result to this path");
  app.add_option("--corpus", cdir, "corpus directory (overrides STABEXT_CORPUS)");

  auto* v = app.add_subcommand("validate", "validate an algebra/module file or a corpus dir");
  std::string vpath;
  v->add_option("path", vpath, "file or directory")->required();

  auto* ex = app.add_subcommand("ext", "stable cohomology table of a module pair");
  std::string ex_alg, ex_m, ex_n;
  long ex_lo = 1, ex_hi = 0;
  ex->add_option("algebra", ex_alg)->required();
  ex->add_option("M", ex_m)->required();
  ex->add_option("N", ex_n)->required();
  ex->add_option("--lo", ex_lo, "lowest degree")->capture_default_str();
  ex->add_option("--hi", ex_hi, "highest degree (default: window)");

  auto* ed = app.add_subcommand("extdeg", "extension-degree verdict for a module");
  std::string ed_alg, ed_m;
  ed->add_option("algebra", ed_alg)->required();
  ed->add_option("M", ed_m)->required();

  auto* ar = app.add_subcommand("ar", "almost split sequences and component fragment");
  std::string ar_alg, ar_m;
  bool ar_edges = false;
  ar->add_option("algebra", ar_alg)->required();
  ar->add_option("M", ar_m)->required();
  ar->add_flag("--edge-list", ar_edges, "also print a plain-text edge list");

  auto* vf = app.add_subcommand("verify", "run a verification suite against the corpus");
  std::string suite;
  vf->add_option("suite", suite, "suite name or 'all'")->required();

  auto* gc = app.add_subcommand("gen-corpus", "write the fixture corpus as JSON files");
  std::string gc_dir;
  gc->add_option("dir", gc_dir, "output directory (default: corpus dir)");

  // allow the global options to appear after the subcommand name
  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (v->parsed()) return cmd_validate(vpath, cdir, json_out);

    if (ex->parsed()) {
      AlgebraPtr a = load_algebra_file(ex_alg);
      ModulePtr m = load_module_file(ex_m, a);
      ModulePtr n = load_module_file(ex_n, a);
      if (ex_hi == 0) ex_hi = window;
      ExtTable t = ext_table(m, n, ex_lo, ex_hi);
      emit(ext_table_to_json(t), json_out);
      return 0;
    }

    if (ed->parsed()) {
      AlgebraPtr a = load_algebra_file(ed_alg);
      ModulePtr m = load_module_file(ed_m, a);
      ExtDegResult r = ext_deg(m, window, guard, seed);
      emit(verdict_to_json(r), json_out);
      return 0;
    }

    if (ar->parsed()) {
      AlgebraPtr a = load_algebra_file(ar_alg);
      ModulePtr m = load_module_file(ar_m, a);
      ComponentGraph g = build_component(m, radius, seed, 256, accept_probable);
      emit(component_to_json(g), json_out);
      if (ar_edges) std::cout << component_edge_list(g);
      return 0;
    }

    if (vf->parsed()) {
      Corpus c = standard_corpus();
      std::vector<std::string> names =
          suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool need_ls = false;
      for (const auto& n : names) need_ls = need_ls || suite_needs_ls_context(n);
      std::optional<LsContext> ls;
      if (need_ls) ls = build_ls_context(c, seed);
      json out = json::array();
      bool all_ok = true;
      for (const auto& n : names) {
        SuiteReport r = run_suite(n, c, ls ? &*ls : nullptr, window, guard, seed);
        all_ok = all_ok && r.ok();
        out.push_back(suite_report_to_json(r));
      }
      emit(out, json_out);
      return all_ok ? 0 : 1;
    }

    if (gc->parsed()) {
      std::string dir = gc_dir.empty() ? corpus_dir(cdir) : gc_dir;
      json idx = write_corpus(dir);
      emit(idx, json_out);
      return 0;
    }
  } catch (const IoError& e) {
    return fail_input(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
