#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <unistd.h>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qbox/qbox.h"

namespace {

constexpr const char* kSchema = "qbox-schema v1";

enum ExitCode { kOk = 0, kVerificationFailed = 1, kLibraryError = 3, kIoError = 4 };

using Cell = std::variant<double, long long, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

struct LibraryError {
  qbox_status status;
  std::string message;
};

void check(qbox_status s) {
  if (s != QBOX_OK) throw LibraryError{s, qbox_last_error()};
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return num(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return num(*d);  // JSON has no inf/nan
  }
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["command"] = t.command;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const Row& r : t.rows) {
      nlohmann::ordered_json jr = nlohmann::ordered_json::array();
      for (const Cell& c : r) jr.push_back(json_cell(c));
      j["rows"].push_back(jr);
    }
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# " << kSchema << '\n' << "# command: " << t.command << '\n';
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const Row& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << '\n';
  }
  return os.str();
}

// write to a sibling temp file, then rename over the target
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path);
  }
}

struct ContextDeleter {
  void operator()(qbox_context* c) const { qbox_context_destroy(c); }
};
using Context = std::unique_ptr<qbox_context, ContextDeleter>;

struct Physics {
  double q = 1.5, hbar = 1.0, mass = 1.0, length = 1.0, tol = 1e-10;

  Context make() const {
    qbox_context* c = nullptr;
    check(qbox_context_create(q, hbar, mass, length, tol, &c));
    return Context(c);
  }

  void describe(Table& t, const qbox_context* c) const {
    double qq = 0, mq = 0;
    check(qbox_context_q(c, &qq));
    check(qbox_context_mass_q(c, &mq));
    t.meta.push_back({"q", num(qq)});
    t.meta.push_back({"hbar", num(hbar)});
    t.meta.push_back({"mass", num(mass)});
    t.meta.push_back({"m_q", num(mq)});
    t.meta.push_back({"L", num(length)});
    t.meta.push_back({"tol", num(tol)});
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed quantum mechanics in a box"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qbox_version()));

  Physics phys;
  if (const char* env = std::getenv("QBOX_TOL")) {
    try {
      phys.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed QBOX_TOL=" << env << '\n';
    }
  }
  std::string output, format = "csv";
  auto* q_opt = app.add_option("--q", phys.q, "deformation parameter (q < 1 is mapped to 1/q)")->capture_default_str();
  app.add_option("--hbar", phys.hbar, "reduced Planck constant")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mass", phys.mass, "particle mass")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--L", phys.length, "box length")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", phys.tol, "series tolerance (default from QBOX_TOL, else 1e-10)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", output, "output file (stdout if omitted)");
  app.add_option("--format", format, "output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  int n_max = 4;
  bool no_norm = false;
  auto* spectrum = app.add_subcommand("spectrum", "box eigenvalues pi_q(n), k_n, E_n and normalizations");
  spectrum->add_option("--n-max", n_max, "number of levels")->capture_default_str()->check(CLI::Range(1, 200));
  spectrum->add_flag("--no-norm", no_norm, "skip the normalization integrals");

  auto* piq = app.add_subcommand("piq", "roots pi_q(n) by root finding and by the inversion series");
  piq->add_option("--n-max", n_max, "number of roots")->capture_default_str()->check(CLI::Range(1, 200));

  double kx = 1.0, kxp = 0.5, kT = 1.0;
  bool pair_check = false;
  auto* kern = app.add_subcommand("kernel", "propagation kernel K(x, x'; T)");
  kern->add_option("--x", kx, "final position")->capture_default_str();
  kern->add_option("--x-prime", kxp, "initial position")->capture_default_str();
  kern->add_option("--T", kT, "elapsed time")->capture_default_str()->check(CLI::PositiveNumber);
  kern->add_flag("--pair-check", pair_check, "compare K(q^{+-1} x, x) with the prefactor on x in [0.5, 2]");

  double x0 = 0.5, v0 = 1.0, t_end = 10.0, step = 1e-3;
  int sheet = 1;
  double amp = 0.0;
  auto* traj = app.add_subcommand("trajectory", "classical trajectory of the effective model");
  traj->add_option("--x0", x0, "initial position")->capture_default_str();
  traj->add_option("--v0", v0, "initial velocity")->capture_default_str();
  traj->add_option("--amplitude", amp, "start on the sine solution with this amplitude (overrides --x0/--v0)");
  traj->add_option("--t-end", t_end, "final time")->capture_default_str();
  traj->add_option("--step", step, "RK4 step")->capture_default_str()->check(CLI::PositiveNumber);
  traj->add_option("--sheet", sheet, "+1 principal, -1 reflected")->capture_default_str()->check(CLI::IsMember({1, -1}));

  double E = 1.0, p_min = 0.05, p_max = 10.0;
  int samples = 200, max_branch = 2;
  auto* portrait = app.add_subcommand("phase-portrait", "equi-energy curve H(x, p) = E");
  portrait->add_option("--E", E, "energy")->capture_default_str()->check(CLI::PositiveNumber);
  portrait->add_option("--p-min", p_min)->capture_default_str();
  portrait->add_option("--p-max", p_max)->capture_default_str();
  portrait->add_option("--samples", samples)->capture_default_str()->check(CLI::Range(2, 1000000));
  portrait->add_option("--max-branch", max_branch)->capture_default_str()->check(CLI::Range(0, 1000));

  auto* verify = app.add_subcommand("verify", "run the acceptance suite; --q selects the classical-limit deformation");

  CLI11_PARSE(app, argc, argv);

  try {
    Table t;
    int code = kOk;
    if (spectrum->parsed()) {
      Context c = phys.make();
      t.command = "spectrum";
      phys.describe(t, c.get());
      std::vector<qbox_spectrum_entry> e(n_max);
      check(qbox_spectrum(c.get(), n_max, no_norm ? 0 : 1, e.data()));
      t.columns = {"n", "pi_q", "k_n", "E_n", "N_n"};
      for (const auto& s : e) t.rows.push_back({(long long)s.n, s.pi_q, s.k_n, s.E_n, s.N_n});
    } else if (piq->parsed()) {
      Context c = phys.make();
      t.command = "piq";
      phys.describe(t, c.get());
      double b[4];
      check(qbox_lagrange_b(c.get(), b));
      t.meta.push_back({"b", num(b[0]) + " " + num(b[1]) + " " + num(b[2]) + " " + num(b[3])});
      t.columns = {"n", "pi_q", "pi_q_series", "relative_difference", "last_term_ratio"};
      for (int n = 1; n <= n_max; ++n) {
        double root = 0, series = 0, ratio = 0;
        check(qbox_pi_q(c.get(), n, &root));
        check(qbox_pi_q_series(c.get(), n, &series, &ratio));
        t.rows.push_back({(long long)n, root, series, series / root - 1.0, ratio});
      }
    } else if (kern->parsed()) {
      Context c = phys.make();
      t.command = "kernel";
      phys.describe(t, c.get());
      t.meta.push_back({"T", num(kT)});
      if (pair_check) {
        double pre_re = 0, pre_im = 0, qq = 0;
        check(qbox_kernel_prefactor(c.get(), kT, &pre_re, &pre_im));
        check(qbox_context_q(c.get(), &qq));
        const double pre_abs = std::hypot(pre_re, pre_im);
        t.columns = {"x", "x_prime", "re", "im", "prefactor_re", "prefactor_im", "relative_gap", "terms"};
        for (int i = 0; i <= 15; ++i) {
          const double x = 0.5 + 0.1 * i;
          for (double s : {qq, 1.0 / qq}) {
            qbox_kernel_value k{};
            check(qbox_kernel(c.get(), s * x, x, kT, &k));
            const double gap = std::hypot(k.re - pre_re, k.im - pre_im) / pre_abs;
            t.rows.push_back({s * x, x, k.re, k.im, pre_re, pre_im, gap, (long long)k.terms_used});
          }
        }
      } else {
        qbox_kernel_value k{};
        check(qbox_kernel(c.get(), kx, kxp, kT, &k));
        t.columns = {"x", "x_prime", "T", "re", "im", "terms", "tail_bound"};
        t.rows.push_back({kx, kxp, kT, k.re, k.im, (long long)k.terms_used, k.tail_bound});
      }
    } else if (traj->parsed()) {
      Context c = phys.make();
      t.command = "trajectory";
      phys.describe(t, c.get());
      double t0 = 0.0;
      if (amp != 0.0) {
        // x = A sin(omega t) with omega = 2 hbar / (m_q lambda A^2); start off the origin
        double qq = 0, mq = 0;
        check(qbox_context_q(c.get(), &qq));
        check(qbox_context_mass_q(c.get(), &mq));
        const double w = 2.0 * phys.hbar / (mq * (qq - 1.0 / qq) * amp * amp);
        t0 = 0.3 / w;
        x0 = amp * std::sin(w * t0);
        v0 = amp * w * std::cos(w * t0);
        t_end += t0;
      }
      qbox_trajectory* tr = nullptr;
      check(qbox_trajectory_integrate(c.get(), t0, x0, v0, t_end, step, sheet, &tr));
      std::unique_ptr<qbox_trajectory, void (*)(qbox_trajectory*)> guard(tr, qbox_trajectory_destroy);
      t.meta.push_back({"sheet", std::to_string(sheet)});
      t.meta.push_back({"regime", qbox_trajectory_regime(tr)});
      t.meta.push_back({"max_C_drift", num(qbox_trajectory_drift(tr))});
      t.meta.push_back({"error_estimate", num(qbox_trajectory_error_estimate(tr))});
      if (const char* h = qbox_trajectory_halt_reason(tr)) t.meta.push_back({"halted", h});
      t.columns = {"t", "x", "xdot", "C"};
      const std::size_t n = qbox_trajectory_size(tr);
      for (std::size_t i = 0; i < n; ++i) {
        double tt, x, v, C;
        check(qbox_trajectory_state(tr, i, &tt, &x, &v, &C));
        t.rows.push_back({tt, x, v, C});
      }
    } else if (portrait->parsed()) {
      Context c = phys.make();
      t.command = "phase-portrait";
      phys.describe(t, c.get());
      qbox_portrait* pp = nullptr;
      check(qbox_portrait_compute(c.get(), E, p_min, p_max, samples, max_branch, &pp));
      std::unique_ptr<qbox_portrait, void (*)(qbox_portrait*)> guard(pp, qbox_portrait_destroy);
      t.meta.push_back({"E", num(E)});
      t.meta.push_back({"p0", num(qbox_portrait_p0(pp))});
      t.meta.push_back({"x_max", num(qbox_portrait_x_max(pp))});
      t.meta.push_back({"skipped_samples", std::to_string(qbox_portrait_skipped(pp))});
      t.columns = {"x", "p", "branch", "stationary"};
      const std::size_t n = qbox_portrait_size(pp);
      for (std::size_t i = 0; i < n; ++i) {
        qbox_phase_point p{};
        check(qbox_portrait_point(pp, i, &p));
        t.rows.push_back({p.x, p.p, (long long)p.branch, (long long)p.stationary});
      }
    } else if (verify->parsed()) {
      const double limit_q = q_opt->count() > 0 ? phys.q : 0.0;
      qbox_report* r = nullptr;
      check(qbox_verify(limit_q, &r));
      std::unique_ptr<qbox_report, void (*)(qbox_report*)> guard(r, qbox_report_destroy);
      t.command = "verify";
      t.columns = {"criterion", "status", "title"};
      const std::size_t n = qbox_report_criteria(r);
      for (std::size_t i = 0; i < n; ++i) {
        int id = 0, passed = 0;
        const char* title = nullptr;
        check(qbox_report_criterion(r, i, &id, &passed, &title));
        t.rows.push_back({(long long)id, std::string(passed ? "PASS" : "FAIL"), std::string(title)});
      }
      std::cerr << qbox_report_text(r);
      if (!qbox_report_passed(r)) code = kVerificationFailed;
    }
    emit(render(t, format), output);
    return code;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << qbox_status_string(e.status) << ": " << e.message << '\n';
    return kLibraryError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}
