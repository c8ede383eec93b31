// Command-line front end: one verb per library operation, certificates in
// the text formats, exit status 0 = verdict true/pass, 1 = false/fail,
// 2 = usage or IO error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paq/io.hpp"
#include "paq/palgebra.hpp"
#include "paq/verify.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string format = "text";
  paq::Budget budget;

  bool records() const { return format == "records"; }
};

void emit_record(const json& j) { std::cout << j.dump() << "\n"; }

int verdict_exit(const Options& opt, const std::string& command, bool verdict,
                 const std::vector<std::pair<std::string, std::string>>&
                     fields = {}) {
  if (opt.records()) {
    json j{{"record", "verdict"}, {"command", command}, {"verdict", verdict}};
    for (auto& [k, v] : fields) j[k] = v;
    emit_record(j);
  }
  return verdict ? 0 : 1;
}

std::string morphism_summary(const paq::PpMorphism& m) {
  std::ostringstream ss;
  ss << "[";
  for (size_t i = 0; i < m.map.size(); ++i) ss << (i ? " " : "") << m.map[i];
  ss << "]";
  return ss.str();
}

void save_or_print_poset(const paq::Poset& p, const std::string& out) {
  std::ostringstream ss;
  paq::io::write_poset(ss, p);
  if (out.empty())
    std::cout << ss.str();
  else
    paq::io::save_text(out, ss.str());
}

paq::SeededFault parse_fault(const std::string& name) {
  if (name == "none") return paq::SeededFault::none;
  if (name == "drop-maxima") return paq::SeededFault::drop_maxima_preservation;
  if (name == "corrupt-star") return paq::SeededFault::corrupt_star_table;
  if (name == "skip-family") return paq::SeededFault::skip_cover_family;
  throw paq::Error("unknown mutation '" + name + "'");
}

void print_report(const paq::CheckReport& r, const Options& opt) {
  if (opt.records()) return;  // handled by the record writer
  std::ostringstream hdr;
  hdr.setf(std::ios::fixed);
  hdr.precision(2);
  hdr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.seconds
      << "s)";
  std::cout << hdr.str() << "\n";
  for (const auto& line : r.lines) std::cout << "    " << line << "\n";
  if (!r.counterexample.empty())
    std::cout << "    counterexample: " << r.counterexample << "\n";
}

json report_record(const paq::CheckReport& r,
                   const std::vector<std::string>& cert_paths) {
  json params = json::object();
  for (auto& [k, v] : r.params) params[k] = v;
  json j{{"record", "check"},
         {"name", r.name},
         {"params", params},
         {"verdict", r.pass ? "pass" : "fail"},
         {"seconds", r.seconds}};
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  if (!cert_paths.empty()) j["certificates"] = cert_paths;
  return j;
}

int run_verify(const Options& opt, const std::string& check, int m, int n_max,
               int m_max, const std::string& mutate,
               const std::string& report_path, const std::string& cert_dir) {
  paq::SeededFault fault = parse_fault(mutate);
  std::vector<paq::CheckReport> reports;
  if (check == "all") {
    if (fault != paq::SeededFault::none)
      throw paq::Error("mutations apply to individual checks, not 'all'");
    reports = paq::check_all(opt.budget);
  } else if (check == "lemma-mplus1") {
    reports.push_back(paq::check_lemma_mplus1(n_max, m_max, fault,
                                              opt.budget));
  } else if (check == "m2-chain") {
    reports.push_back(paq::check_m2_chain(fault));
  } else if (check == "unique-cover") {
    reports.push_back(paq::check_unique_cover(m, fault));
  } else if (check == "images-r") {
    reports.push_back(paq::check_images_of_r(fault));
  } else if (check == "duality") {
    reports.push_back(paq::check_duality(std::min(n_max, 5), fault,
                                         opt.budget));
  } else {
    throw paq::Error("unknown check '" + check + "'");
  }

  std::ofstream report_file;
  if (!report_path.empty()) {
    report_file.open(report_path);
    if (!report_file) throw paq::Error("cannot write " + report_path);
  }

  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    std::vector<std::string> cert_paths;
    if (!cert_dir.empty()) {
      std::filesystem::create_directories(cert_dir);
      for (const auto& [label, text] : r.certificates) {
        std::string path = cert_dir + "/" + r.name + "-" + label;
        paq::io::save_text(path, text);
        cert_paths.push_back(path);
      }
    }
    print_report(r, opt);
    json rec = report_record(r, cert_paths);
    if (opt.records()) emit_record(rec);
    if (report_file) report_file << rec.dump() << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-poset toolkit for p-algebra quasivarieties"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "records"}));
  int jobs = -1;
  app.add_option("--jobs", jobs, "cap worker parallelism");

  // validate
  auto* c_validate = app.add_subcommand(
      "validate", "check the order axioms of a relation file");
  std::string v_file;
  bool v_closure = false;
  c_validate->add_option("file", v_file)->required();
  c_validate->add_flag("--closure", v_closure,
                       "apply reflexive-transitive closure before checking");

  // check-pp
  auto* c_checkpp =
      app.add_subcommand("check-pp", "verify a pp-morphism certificate");
  std::string cp_source, cp_target, cp_map;
  c_checkpp->add_option("--source", cp_source)->required();
  c_checkpp->add_option("--target", cp_target)->required();
  c_checkpp->add_option("--map", cp_map)->required();

  // find-pp
  auto* c_findpp = app.add_subcommand("find-pp", "enumerate pp-morphisms");
  std::string fp_source, fp_target, fp_cert;
  bool fp_surjective = false;
  long long fp_limit = -1;
  c_findpp->add_option("--source", fp_source)->required();
  c_findpp->add_option("--target", fp_target)->required();
  c_findpp->add_flag("--surjective", fp_surjective,
                     "search for one surjective morphism instead");
  c_findpp->add_option("--limit", fp_limit);
  c_findpp->add_option("--cert", fp_cert, "write found maps to this file");

  // member
  auto* c_member = app.add_subcommand(
      "member", "membership of a poset's algebra in a generated quasivariety");
  std::string mb_target, mb_cert;
  std::vector<std::string> mb_gens;
  c_member->add_option("--target", mb_target)->required();
  c_member->add_option("--gen", mb_gens, "generator poset (repeatable)")
      ->required();
  c_member->add_option("--cert", mb_cert);

  // leq
  auto* c_leq =
      app.add_subcommand("leq", "quasivariety inclusion between generators");
  std::string lq_left, lq_right;
  c_leq->add_option("--left", lq_left)->required();
  c_leq->add_option("--right", lq_right)->required();

  // in-pam
  auto* c_inpam = app.add_subcommand("in-pam",
                                     "membership in the m-th variety");
  std::string ip_file;
  int ip_m = 0;
  c_inpam->add_option("--m", ip_m)->required();
  c_inpam->add_option("file", ip_file)->required();

  // contains-pam
  auto* c_contains = app.add_subcommand(
      "contains-pam", "containment of the m-th variety in the generated "
                      "quasivariety");
  std::string ct_file, ct_cert;
  int ct_m = 0;
  c_contains->add_option("--m", ct_m)->required();
  c_contains->add_option("file", ct_file)->required();
  c_contains->add_option("--cert", ct_cert);

  // reduce
  auto* c_reduce = app.add_subcommand("reduce", "max-set reduction");
  std::string rd_file, rd_out;
  c_reduce->add_option("file", rd_file)->required();
  c_reduce->add_option("--out", rd_out);

  // shrink
  auto* c_shrink = app.add_subcommand(
      "shrink", "collapse a reduced poset's base to m+1 blocks");
  std::string sh_file, sh_out;
  int sh_m = 0;
  c_shrink->add_option("--m", sh_m)->required();
  c_shrink->add_option("file", sh_file, "reduced-poset file")->required();
  c_shrink->add_option("--out", sh_out);

  // cover
  auto* c_cover =
      app.add_subcommand("cover", "the unique cover's generating poset");
  int cv_m = 0;
  std::string cv_dot, cv_out;
  c_cover->add_option("--m", cv_m)->required();
  c_cover->add_option("--dot", cv_dot, "write a DOT diagram here");
  c_cover->add_option("--out", cv_out, "write the poset file here");

  // images
  auto* c_images =
      app.add_subcommand("images", "surjective pp-morphic images");
  std::string im_file;
  c_images->add_option("file", im_file)->required();

  // epsilon
  auto* c_epsilon = app.add_subcommand("epsilon", "upset algebra of a poset");
  std::string ep_file, ep_out;
  c_epsilon->add_option("file", ep_file)->required();
  c_epsilon->add_option("--out", ep_out);

  // delta
  auto* c_delta = app.add_subcommand("delta", "dual poset of a p-algebra");
  std::string dl_file, dl_out;
  c_delta->add_option("file", dl_file, "algebra file")->required();
  c_delta->add_option("--out", dl_out);

  // ibm
  auto* c_ibm = app.add_subcommand("ibm", "evaluate the variety identity");
  std::string ib_file;
  int ib_m = 0;
  c_ibm->add_option("--m", ib_m)->required();
  c_ibm->add_option("file", ib_file, "algebra file")->required();

  // verify
  auto* c_verify = app.add_subcommand("verify", "run verification checks");
  std::string vf_check, vf_mutate = "none", vf_report, vf_certdir;
  int vf_m = 2, vf_nmax = 6, vf_mmax = 2;
  c_verify
      ->add_option("check", vf_check,
                   "all | lemma-mplus1 | m2-chain | unique-cover | images-r "
                   "| duality")
      ->required();
  c_verify->add_option("--m", vf_m);
  c_verify->add_option("--n-max", vf_nmax);
  c_verify->add_option("--m-max", vf_mmax);
  c_verify->add_option("--mutate", vf_mutate,
                       "none | drop-maxima | corrupt-star | skip-family");
  c_verify->add_option("--report", vf_report, "structured report file");
  c_verify->add_option("--cert-dir", vf_certdir, "directory for certificates");

  // check-cert
  auto* c_checkcert = app.add_subcommand(
      "check-cert", "re-verify a certificate file against poset files");
  std::string cc_target, cc_cert;
  std::vector<std::string> cc_gens;
  int cc_target_bm = -1;
  bool cc_surjective = false, cc_cover = false;
  c_checkcert->add_option("--target", cc_target);
  c_checkcert->add_option("--target-bm", cc_target_bm,
                          "use the m-maxima dual as the target");
  c_checkcert->add_option("--gen", cc_gens, "source poset (repeatable)")
      ->required();
  c_checkcert->add_option("--cert", cc_cert)->required();
  c_checkcert->add_flag("--surjective", cc_surjective,
                        "require each map to be surjective");
  c_checkcert->add_flag("--cover", cc_cover,
                        "require the images to jointly cover the target");

  // dot
  auto* c_dot = app.add_subcommand("dot", "Hasse diagram in DOT");
  std::string dt_file, dt_out;
  c_dot->add_option("file", dt_file)->required();
  c_dot->add_option("--out", dt_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opt.budget = paq::Budget::from_env();
    if (jobs >= 0) opt.budget.jobs = jobs;

    if (*c_validate) {
      paq::Poset p = paq::io::load_poset(v_file, !v_closure);
      auto bad = paq::validate(p);
      if (!bad) {
        std::cout << "ok: valid partial order on " << p.size()
                  << " elements\n";
        return verdict_exit(opt, "validate", true);
      }
      std::cout << bad->describe() << "\n";
      return verdict_exit(opt, "validate", false,
                          {{"violation", bad->describe()}});
    }

    if (*c_checkpp) {
      paq::Poset src = paq::io::load_poset(cp_source);
      paq::Poset dst = paq::io::load_poset(cp_target);
      auto maps = paq::io::load_ppmaps(cp_map);
      if (maps.empty()) throw paq::Error("certificate file holds no maps");
      for (size_t i = 0; i < maps.size(); ++i) {
        auto bad = paq::check_pp_morphism(maps[i], src, dst);
        if (bad) {
          std::cout << "map " << i << ": " << bad->describe() << "\n";
          return verdict_exit(opt, "check-pp", false,
                              {{"failure", bad->describe()}});
        }
      }
      std::cout << "ok: " << maps.size() << " pp-morphism(s)\n";
      return verdict_exit(opt, "check-pp", true);
    }

    if (*c_findpp) {
      paq::Poset src = paq::io::load_poset(fp_source);
      paq::Poset dst = paq::io::load_poset(fp_target);
      std::vector<paq::PpMorphism> found;
      if (fp_surjective) {
        if (auto m = paq::exists_surjective_pp(src, dst))
          found.push_back(std::move(*m));
      } else {
        std::optional<size_t> limit;
        if (fp_limit >= 0) limit = static_cast<size_t>(fp_limit);
        found = paq::enumerate_pp_morphisms(src, dst, limit);
      }
      for (const auto& m : found)
        std::cout << morphism_summary(m) << "\n";
      if (!fp_cert.empty())
        paq::io::save_text(fp_cert, paq::io::ppmaps_text(found));
      return verdict_exit(opt, "find-pp", !found.empty(),
                          {{"count", std::to_string(found.size())}});
    }

    if (*c_member) {
      paq::Poset target = paq::io::load_poset(mb_target);
      std::vector<paq::Poset> gens;
      for (const auto& g : mb_gens) gens.push_back(paq::io::load_poset(g));
      paq::MembershipCertificate cert = paq::member(target, gens);
      if (cert.is_member()) {
        std::cout << "member: " << cert.witnesses.size()
                  << " covering morphism(s)\n";
        for (size_t i = 0; i < cert.witnesses.size(); ++i)
          std::cout << "  witness " << i << " from generator "
                    << cert.witness_gen[i] << ": "
                    << morphism_summary(cert.witnesses[i]) << "\n";
      } else {
        std::cout << "non-member: blocker " << cert.blocker << " ("
                  << target.label(cert.blocker) << ") is in no image\n";
      }
      if (!mb_cert.empty())
        paq::io::save_text(mb_cert, paq::io::ppmaps_text(cert.witnesses));
      return verdict_exit(
          opt, "member", cert.is_member(),
          {{"blocker", std::to_string(cert.blocker)},
           {"witnesses", std::to_string(cert.witnesses.size())}});
    }

    if (*c_leq) {
      paq::Poset left = paq::io::load_poset(lq_left);
      paq::Poset right = paq::io::load_poset(lq_right);
      bool v = paq::quasivariety_leq(left, right);
      std::cout << (v ? "true" : "false") << "\n";
      return verdict_exit(opt, "leq", v);
    }

    if (*c_inpam) {
      paq::Poset p = paq::io::load_poset(ip_file);
      bool v = paq::in_pa_m(p, ip_m);
      std::cout << (v ? "true" : "false") << "\n";
      return verdict_exit(opt, "in-pam", v);
    }

    if (*c_contains) {
      paq::Poset p = paq::io::load_poset(ct_file);
      auto wit = paq::contains_pa_m(p, ct_m);
      if (wit) {
        std::cout << "true: surjection " << morphism_summary(*wit) << "\n";
        if (!ct_cert.empty())
          paq::io::save_text(ct_cert, paq::io::ppmaps_text({&*wit, 1}));
      } else {
        std::cout << "false\n";
      }
      return verdict_exit(opt, "contains-pam", wit.has_value());
    }

    if (*c_reduce) {
      paq::Poset p = paq::io::load_poset(rd_file);
      paq::Reduction r = paq::reduction(p);
      save_or_print_poset(r.poset, rd_out);
      std::cout << "# canonical map:";
      for (int v : r.map) std::cout << " " << v;
      std::cout << "\n";
      return verdict_exit(opt, "reduce", true);
    }

    if (*c_shrink) {
      paq::ReducedPoset r = paq::io::load_reduced(sh_file);
      paq::ReducedPoset s = paq::shrink_to_base(r, sh_m);
      std::ostringstream ss;
      paq::io::write_reduced(ss, s);
      if (sh_out.empty())
        std::cout << ss.str();
      else
        paq::io::save_text(sh_out, ss.str());
      return verdict_exit(opt, "shrink", true);
    }

    if (*c_cover) {
      if (cv_m < 2)
        throw paq::Error("cover: the characterization starts at m = 2");
      paq::ReducedPoset r = paq::the_cover(cv_m);
      std::ostringstream ss;
      paq::io::write_reduced(ss, r);
      std::cout << ss.str();
      save_or_print_poset(r.realized, cv_out);
      if (!cv_dot.empty())
        paq::io::save_text(cv_dot, paq::io::to_dot(r.realized));
      return verdict_exit(opt, "cover", true);
    }

    if (*c_images) {
      paq::Poset p = paq::io::load_poset(im_file);
      std::vector<paq::Poset> images = paq::pp_morphic_images(p, opt.budget);
      std::cout << images.size() << " image(s)\n";
      for (const auto& img : images) {
        std::ostringstream ss;
        paq::io::write_poset(ss, img);
        std::cout << ss.str();
      }
      return verdict_exit(opt, "images", true,
                          {{"count", std::to_string(images.size())}});
    }

    if (*c_epsilon) {
      paq::Poset p = paq::io::load_poset(ep_file);
      paq::PAlgebra a = paq::epsilon(p, opt.budget);
      std::ostringstream ss;
      paq::io::write_palgebra(ss, a);
      if (ep_out.empty())
        std::cout << ss.str();
      else
        paq::io::save_text(ep_out, ss.str());
      return verdict_exit(opt, "epsilon", true,
                          {{"size", std::to_string(a.size)}});
    }

    if (*c_delta) {
      paq::PAlgebra a = paq::io::load_palgebra(dl_file);
      paq::Poset p = paq::delta(a);
      save_or_print_poset(p, dl_out);
      return verdict_exit(opt, "delta", true,
                          {{"size", std::to_string(p.size())}});
    }

    if (*c_ibm) {
      paq::PAlgebra a = paq::io::load_palgebra(ib_file);
      if (auto bad = paq::check_p_algebra(a))
        throw paq::Error("not a p-algebra: " + bad->describe());
      paq::IbmResult r = paq::evaluate_ibm(a, ib_m, opt.budget);
      if (r.satisfied) {
        std::cout << "satisfied\n";
      } else {
        std::cout << "falsified at (";
        for (size_t i = 0; i < r.falsifier.size(); ++i)
          std::cout << (i ? "," : "") << r.falsifier[i];
        std::cout << ")\n";
      }
      return verdict_exit(opt, "ibm", r.satisfied);
    }

    if (*c_verify)
      return run_verify(opt, vf_check, vf_m, vf_nmax, vf_mmax, vf_mutate,
                        vf_report, vf_certdir);

    if (*c_checkcert) {
      if (cc_target.empty() == (cc_target_bm < 0))
        throw paq::Error("give exactly one of --target and --target-bm");
      paq::Poset target = cc_target.empty()
                              ? paq::make_bm_poset(cc_target_bm)
                              : paq::io::load_poset(cc_target);
      std::vector<paq::Poset> gens;
      for (const auto& g : cc_gens) gens.push_back(paq::io::load_poset(g));
      auto maps = paq::io::load_ppmaps(cc_cert);
      if (maps.empty()) throw paq::Error("certificate file holds no maps");
      uint64_t covered = 0;
      for (size_t i = 0; i < maps.size(); ++i) {
        bool valid = false;
        for (const paq::Poset& g : gens) {
          if (static_cast<int>(maps[i].size()) != g.size()) continue;
          if (paq::is_pp_morphism(maps[i], g, target)) valid = true;
        }
        if (!valid) {
          std::cout << "map " << i
                    << ": not a pp-morphism from any generator\n";
          return verdict_exit(opt, "check-cert", false);
        }
        uint64_t image = 0;
        for (int v : maps[i]) image |= paq::bit(v);
        if (cc_surjective && image != target.all_mask()) {
          std::cout << "map " << i << ": not surjective\n";
          return verdict_exit(opt, "check-cert", false);
        }
        covered |= image;
      }
      if (cc_cover && covered != target.all_mask()) {
        std::cout << "images do not cover the target\n";
        return verdict_exit(opt, "check-cert", false);
      }
      std::cout << "ok: " << maps.size() << " map(s) re-verified\n";
      return verdict_exit(opt, "check-cert", true);
    }

    if (*c_dot) {
      paq::Poset p = paq::io::load_poset(dt_file);
      std::string dot = paq::io::to_dot(p);
      if (dt_out.empty())
        std::cout << dot;
      else
        paq::io::save_text(dt_out, dot);
      return verdict_exit(opt, "dot", true);
    }

    throw paq::Error("no subcommand handled");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
