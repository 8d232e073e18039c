#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperspec/error.hpp"
#include "hyperspec/hgr_io.hpp"
#include "hyperspec/hypergraph.hpp"
#include "hyperspec/lab.hpp"
#include "hyperspec/patterns.hpp"
#include "hyperspec/report.hpp"
#include "hyperspec/spectral.hpp"
#include "hyperspec/stability.hpp"

#ifndef HYPERSPEC_VERSION
#define HYPERSPEC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace hyperspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitInput = 3;
constexpr int kExitCap = 4;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

struct Run {
  std::string command_line;
  std::string out_path;
  std::string manifest_path;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  Report config;
  Report inputs;

  Hypergraph load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    inputs.add(path, "fnv1a64:" + hex(fnv1a(text)));
    return parse_hgr(text);
  }

  void emit(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write " + out_path);
    out << text;
  }

  void manifest(double wall_seconds, int status) const {
    Report m;
    m.add("command_line", command_line);
    m.add("version", HYPERSPEC_VERSION);
    m.add("seed", seed);
    m.add("jobs", jobs);
    m.append(config, "config");
    m.append(inputs, "input");
    m.add("exit_status", status);
    m.add("wall_time_seconds", wall_seconds);
    if (manifest_path.empty()) {
      std::cerr << m.str();
    } else {
      std::ofstream out(manifest_path, std::ios::binary);
      out << m.str();
    }
  }
};

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfiniteP;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw InputError("bad value for --p: '" + text + "'");
  return v;
}

struct SolverFlags {
  double tolerance = 1e-10;
  std::size_t max_iterations = 100000;
  std::size_t restarts = 16;
  double damping = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", tolerance, "convergence tolerance")->capture_default_str();
    cmd->add_option("--max-iter", max_iterations, "iteration cap per restart")->capture_default_str();
    cmd->add_option("--restarts", restarts, "number of starts")->capture_default_str();
    cmd->add_option("--damping", damping, "weight of the new iterate in (0, 1]")->capture_default_str();
  }

  SolverConfig make(const Run& run, double p) const {
    SolverConfig cfg;
    cfg.p = p;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iterations;
    cfg.restarts = restarts;
    cfg.damping = damping;
    cfg.seed = run.seed;
    cfg.jobs = run.jobs;
    return cfg;
  }

  void echo(Report& r) const {
    r.add("tolerance", tolerance);
    r.add("max_iterations", max_iterations);
    r.add("restarts", restarts);
    r.add("damping", damping);
  }
};

std::string join_vertices(std::span<const Vertex> vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(vs[i]);
  }
  return out;
}

void add_embedding(Report& rep, const std::string& prefix, const Hypergraph& h, const Embedding& emb) {
  rep.add(prefix + ".core", join_vertices(emb.core_map));
  std::string edges;
  for (std::size_t i = 0; i < emb.edge_assignment.size(); ++i) {
    if (i) edges += ' ';
    auto verts = h.edge(emb.edge_assignment[i].host_edge);
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (j) edges += '-';
      edges += std::to_string(verts[j]);
    }
  }
  rep.add(prefix + ".edges", edges);
}

void write_witnesses(const std::string& dir, const std::vector<Hypergraph>& witnesses) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    save_hgr(fs::path(dir) / ("witness_" + std::to_string(i) + ".hgr"), witnesses[i]);
  }
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("HYPERSPEC_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();
  Run run;
  for (int i = 0; i < argc; ++i) {
    if (i) run.command_line += ' ';
    run.command_line += argv[i];
  }
  run.jobs = default_jobs();

  CLI::App app{"hyperspec: p-spectral radii and extremal structure of uniform hypergraphs"};
  app.set_version_flag("--version", HYPERSPEC_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", run.seed, "seed for every stochastic component")->capture_default_str();
  app.add_option("--jobs", run.jobs, "worker threads (default $HYPERSPEC_JOBS or 1)");
  app.add_option("--out", run.out_path, "write the report or graph here instead of stdout");
  app.add_option("--manifest", run.manifest_path, "write the run manifest here instead of stderr");

  int status = kExitOk;
  std::function<void()> action;

  // construct ---------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "build a hypergraph and write it as HGR v1");
  construct->require_subcommand(1);
  construct->fallthrough();
  struct {
    std::size_t n = 0, k = 0, r = 3, t = 2, clique = 0;
    std::vector<std::size_t> parts;
    std::string a, b, graph;
  } cons;
  auto emit_graph = [&](const Hypergraph& h) { run.emit(to_hgr(h)); };
  {
    auto* c = construct->add_subcommand("complete", "complete r-graph K_n^r");
    c->add_option("--n", cons.n)->required();
    c->add_option("--r", cons.r)->capture_default_str();
    c->callback([&] {
      action = [&] {
        run.config.add("kind", "complete");
        run.config.add("n", cons.n);
        run.config.add("r", cons.r);
        emit_graph(complete(cons.n, cons.r));
      };
    });
    auto* m = construct->add_subcommand("multipartite", "complete multipartite r-graph");
    m->add_option("--parts", cons.parts, "class sizes, comma separated")->required()->delimiter(',');
    m->add_option("--r", cons.r)->capture_default_str();
    m->callback([&] {
      action = [&] {
        run.config.add("kind", "multipartite");
        run.config.add("parts", std::span<const std::size_t>(cons.parts));
        run.config.add("r", cons.r);
        emit_graph(complete_multipartite(PartSizes{cons.parts}, cons.r));
      };
    });
    auto* t = construct->add_subcommand("turan", "Turan r-graph T_r(n, k)");
    t->add_option("--n", cons.n)->required();
    t->add_option("--k", cons.k)->required();
    t->add_option("--r", cons.r)->capture_default_str();
    t->callback([&] {
      action = [&] {
        run.config.add("kind", "turan");
        run.config.add("n", cons.n);
        run.config.add("k", cons.k);
        run.config.add("r", cons.r);
        emit_graph(turan(cons.n, cons.k, cons.r));
      };
    });
    auto* j = construct->add_subcommand("join", "join of two HGR files");
    j->add_option("a", cons.a)->required();
    j->add_option("b", cons.b)->required();
    j->callback([&] {
      action = [&] {
        run.config.add("kind", "join");
        const Hypergraph a = run.load(cons.a), b = run.load(cons.b);
        emit_graph(join(a, b));
      };
    });
    auto* u = construct->add_subcommand("union", "disjoint union of two HGR files");
    u->add_option("a", cons.a)->required();
    u->add_option("b", cons.b)->required();
    u->callback([&] {
      action = [&] {
        run.config.add("kind", "union");
        const Hypergraph a = run.load(cons.a), b = run.load(cons.b);
        emit_graph(disjoint_union(a, b));
      };
    });
    auto* tc = construct->add_subcommand("tcopies", "t disjoint copies of an HGR file");
    tc->add_option("a", cons.a)->required();
    tc->add_option("--t", cons.t)->required();
    tc->callback([&] {
      action = [&] {
        run.config.add("kind", "tcopies");
        run.config.add("t", cons.t);
        emit_graph(t_copies(run.load(cons.a), cons.t));
      };
    });
    auto* e = construct->add_subcommand("expansion", "expansion F^(r) of K_k or of a 2-uniform HGR file");
    auto* clique_opt = e->add_option("--clique", cons.clique, "use F = K_k");
    auto* graph_opt = e->add_option("--graph", cons.graph, "2-uniform HGR file for F");
    clique_opt->excludes(graph_opt);
    e->add_option("--r", cons.r)->capture_default_str();
    e->callback([&, clique_opt, graph_opt] {
      action = [&, clique_opt, graph_opt] {
        run.config.add("kind", "expansion");
        run.config.add("r", cons.r);
        SimpleGraph f;
        if (clique_opt->count()) {
          run.config.add("clique", cons.clique);
          f = SimpleGraph::complete(cons.clique);
        } else if (graph_opt->count()) {
          f = to_simple_graph(run.load(cons.graph));
        } else {
          throw InputError("expansion needs --clique or --graph");
        }
        emit_graph(expansion(f, cons.r));
      };
    });
    auto* s = construct->add_subcommand("shadow", "shadow graph of an HGR file (2-uniform HGR)");
    s->add_option("a", cons.a)->required();
    s->callback([&] {
      action = [&] {
        run.config.add("kind", "shadow");
        emit_graph(to_hypergraph(shadow(run.load(cons.a))));
      };
    });
  }

  // spectral ----------------------------------------------------------------
  struct {
    std::string in, p = "2";
    bool lagrangian = false;
    SolverFlags solver;
  } spec_cmd;
  {
    auto* s = app.add_subcommand("spectral", "estimate the p-spectral radius");
    s->add_option("input", spec_cmd.in, "HGR file")->required();
    s->add_option("--p", spec_cmd.p, "norm exponent (> 1, or inf)")->capture_default_str();
    s->add_flag("--lagrangian", spec_cmd.lagrangian, "compute the Lagrangian (p = 1)");
    spec_cmd.solver.attach(s);
    s->callback([&] {
      action = [&] {
        const Hypergraph h = run.load(spec_cmd.in);
        const double p = spec_cmd.lagrangian ? 1.0 : parse_p(spec_cmd.p);
        if (!spec_cmd.lagrangian && !(p > 1.0)) throw InputError("--p must exceed 1 (use --lagrangian for p = 1)");
        const SolverConfig cfg = spec_cmd.solver.make(run, p);
        run.config.add("p", spec_cmd.lagrangian ? std::string("1") : spec_cmd.p);
        run.config.add("lagrangian", spec_cmd.lagrangian);
        spec_cmd.solver.echo(run.config);
        const SpectralEstimate est = spec_cmd.lagrangian ? lagrangian(h, cfg) : p_spectral_radius(h, cfg);
        Report rep;
        rep.add("n", h.order());
        rep.add("r", h.uniformity());
        rep.add("edges", h.edge_count());
        rep.append(spectral_report(est, cfg));
        run.emit(rep.str());
        if (!est.converged) status = kExitNotConverged;
      };
    });
  }

  // check -------------------------------------------------------------------
  struct {
    std::string in, pattern;
  } check_cmd;
  {
    auto* c = app.add_subcommand("check", "test containment of a forbidden pattern");
    c->add_option("input", check_cmd.in, "HGR file")->required();
    c->add_option("--pattern", check_cmd.pattern, "expansion:K<k> | family:<k> | disjoint:<t> x K<k> | none")
        ->required();
    c->callback([&] {
      action = [&] {
        const Hypergraph h = run.load(check_cmd.in);
        const PatternSpec spec = PatternSpec::parse(check_cmd.pattern);
        spec.validate(h.uniformity());
        run.config.add("pattern", spec.to_string());
        Report rep;
        rep.add("pattern", spec.to_string());
        rep.add("n", h.order());
        rep.add("r", h.uniformity());
        rep.add("edges", h.edge_count());
        switch (spec.kind) {
          case PatternKind::none:
            rep.add("free", true);
            break;
          case PatternKind::expansion: {
            const auto emb = contains_expansion(h, spec.graph, h.uniformity());
            rep.add("free", !emb.has_value());
            if (emb) {
              add_embedding(rep, "certificate", h, *emb);
              rep.add("certificate.valid", validate_embedding(h, spec.graph, *emb));
            }
            break;
          }
          case PatternKind::family: {
            const auto core = contains_family_member(h, spec.k);
            rep.add("free", !core.has_value());
            if (core) {
              rep.add("certificate.core", join_vertices(*core));
              rep.add("certificate.valid", validate_family_core(h, *core, spec.k));
            }
            break;
          }
          case PatternKind::disjoint: {
            const auto copies = contains_t_disjoint(h, spec.graph, h.uniformity(), spec.t);
            rep.add("free", !copies.has_value());
            if (copies) {
              for (std::size_t i = 0; i < copies->size(); ++i) {
                add_embedding(rep, "certificate." + std::to_string(i), h, (*copies)[i]);
              }
              rep.add("certificate.valid", validate_disjoint(h, spec.graph, *copies, spec.t));
            }
            break;
          }
        }
        run.emit(rep.str());
      };
    });
  }

  // stability ---------------------------------------------------------------
  struct {
    std::string in;
    std::size_t k = 3, t = 1;
    double epsilon = 0.01;
    std::optional<double> theta;
    std::uint64_t budget = 100000;
  } stab_cmd;
  {
    auto* s = app.add_subcommand("stability", "partition score, closeness to T_r(n,k), pair classes");
    s->add_option("input", stab_cmd.in, "HGR file")->required();
    s->add_option("--k", stab_cmd.k)->required();
    s->add_option("--epsilon", stab_cmd.epsilon)->capture_default_str();
    s->add_option("--theta", stab_cmd.theta, "dominant-pair threshold (default epsilon^((r-1)/(2r^2)))");
    s->add_option("--t", stab_cmd.t)->capture_default_str();
    s->add_option("--budget", stab_cmd.budget, "heuristic move budget above 12 vertices")->capture_default_str();
    s->callback([&] {
      action = [&] {
        const Hypergraph h = run.load(stab_cmd.in);
        AnalysisConfig cfg;
        cfg.epsilon = stab_cmd.epsilon;
        cfg.k = stab_cmd.k;
        cfg.r = h.uniformity();
        cfg.t = stab_cmd.t;
        cfg.n = h.order();
        const double rr = static_cast<double>(cfg.r);
        cfg.theta = stab_cmd.theta ? *stab_cmd.theta : std::pow(cfg.epsilon, (rr - 1.0) / (2.0 * rr * rr));
        run.config.add("k", cfg.k);
        run.config.add("epsilon", cfg.epsilon);
        run.config.add("theta", cfg.theta);
        run.config.add("t", cfg.t);
        run.config.add("budget", stab_cmd.budget);
        run.emit(stability_report(h, cfg, stab_cmd.budget, run.seed).str());
      };
    });
  }

  // lab ---------------------------------------------------------------------
  struct {
    std::size_t n = 0, r = 3, k = 3, t = 1, radius = 1;
    std::string pattern = "none", p = "3", in, witness_dir;
    SolverFlags solver;
  } lab_cmd;
  {
    auto* lab = app.add_subcommand("lab", "exhaustive searches and construction probes");
    lab->require_subcommand(1);
    lab->fallthrough();

    auto* me = lab->add_subcommand("max-edges", "largest pattern-free r-graph on n vertices");
    me->add_option("--n", lab_cmd.n)->required();
    me->add_option("--r", lab_cmd.r)->capture_default_str();
    me->add_option("--pattern", lab_cmd.pattern)->capture_default_str();
    me->add_option("--witness-dir", lab_cmd.witness_dir, "write witnesses as HGR files here");
    me->callback([&] {
      action = [&] {
        const PatternSpec spec = PatternSpec::parse(lab_cmd.pattern);
        run.config.add("n", lab_cmd.n);
        run.config.add("r", lab_cmd.r);
        run.config.add("pattern", spec.to_string());
        const auto res = exhaustive_max_edges(lab_cmd.n, lab_cmd.r, spec);
        write_witnesses(lab_cmd.witness_dir, res.witnesses);
        Report rep;
        rep.add("n", lab_cmd.n);
        rep.add("r", lab_cmd.r);
        rep.add("pattern", spec.to_string());
        rep.append(search_report(res));
        run.emit(rep.str());
      };
    });

    auto* ml = lab->add_subcommand("max-lambda", "largest p-spectral radius among pattern-free r-graphs");
    ml->add_option("--n", lab_cmd.n)->required();
    ml->add_option("--r", lab_cmd.r)->capture_default_str();
    ml->add_option("--p", lab_cmd.p)->capture_default_str();
    ml->add_option("--pattern", lab_cmd.pattern)->capture_default_str();
    ml->add_option("--witness-dir", lab_cmd.witness_dir, "write witnesses as HGR files here");
    lab_cmd.solver.attach(ml);
    ml->callback([&] {
      action = [&] {
        const PatternSpec spec = PatternSpec::parse(lab_cmd.pattern);
        const double p = parse_p(lab_cmd.p);
        run.config.add("n", lab_cmd.n);
        run.config.add("r", lab_cmd.r);
        run.config.add("p", lab_cmd.p);
        run.config.add("pattern", spec.to_string());
        lab_cmd.solver.echo(run.config);
        const auto res = exhaustive_max_lambda(lab_cmd.n, lab_cmd.r, p, spec, lab_cmd.solver.make(run, p));
        write_witnesses(lab_cmd.witness_dir, res.result.witnesses);
        Report rep;
        rep.add("n", lab_cmd.n);
        rep.add("r", lab_cmd.r);
        rep.add("p", lab_cmd.p);
        rep.add("pattern", spec.to_string());
        rep.append(lambda_search_report(res));
        run.emit(rep.str());
      };
    });

    auto* cs = lab->add_subcommand("composition-sweep", "lambda of K_{t-1} v K_k(n_1..n_k) over all compositions");
    cs->add_option("--n", lab_cmd.n)->required();
    cs->add_option("--k", lab_cmd.k)->required();
    cs->add_option("--r", lab_cmd.r)->capture_default_str();
    cs->add_option("--t", lab_cmd.t)->capture_default_str();
    cs->add_option("--p", lab_cmd.p)->capture_default_str();
    lab_cmd.solver.attach(cs);
    cs->callback([&] {
      action = [&] {
        const double p = parse_p(lab_cmd.p);
        run.config.add("n", lab_cmd.n);
        run.config.add("k", lab_cmd.k);
        run.config.add("r", lab_cmd.r);
        run.config.add("t", lab_cmd.t);
        run.config.add("p", lab_cmd.p);
        lab_cmd.solver.echo(run.config);
        const auto sweep =
            composition_sweep(lab_cmd.n, lab_cmd.k, lab_cmd.r, lab_cmd.t, p, lab_cmd.solver.make(run, p));
        run.emit(sweep_report(sweep).str());
      };
    });

    auto* pp = lab->add_subcommand("perturbation-probe", "look for free graphs near H0 with larger lambda");
    pp->add_option("input", lab_cmd.in, "HGR file for H0")->required();
    pp->add_option("--pattern", lab_cmd.pattern)->capture_default_str();
    pp->add_option("--p", lab_cmd.p)->capture_default_str();
    pp->add_option("--radius", lab_cmd.radius)->capture_default_str();
    lab_cmd.solver.attach(pp);
    pp->callback([&] {
      action = [&] {
        const Hypergraph h = run.load(lab_cmd.in);
        const PatternSpec spec = PatternSpec::parse(lab_cmd.pattern);
        const double p = parse_p(lab_cmd.p);
        run.config.add("pattern", spec.to_string());
        run.config.add("p", lab_cmd.p);
        run.config.add("radius", lab_cmd.radius);
        lab_cmd.solver.echo(run.config);
        const auto probe = perturbation_probe(h, spec, p, lab_cmd.solver.make(run, p), lab_cmd.radius);
        run.emit(probe_report(probe).str());
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (run.jobs < 1) throw InputError("--jobs must be at least 1");
    action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kExitInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kExitOther;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  run.manifest(wall, status);
  return status;
}
