#include "qtradeoff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include <CLI11.hpp>

#include "qtradeoff/csv.hpp"
#include "qtradeoff/dnq.hpp"
#include "qtradeoff/hypercube.hpp"
#include "qtradeoff/pairwise.hpp"
#include "qtradeoff/validators.hpp"

namespace qtradeoff {

namespace {

constexpr double kDnqBalanceBase = 1.727391;
constexpr double kGammaBase = 1.816905;
constexpr int kLineSamples = 100;

std::string fmt(const char* format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::vector<TradeoffPoint> power_line(double c, const std::string& label)
{
    std::vector<TradeoffPoint> pts;
    for (int i = 0; i <= kLineSamples; ++i) {
        const double s = 1.0 + static_cast<double>(i) / kLineSamples;
        pts.push_back(TradeoffPoint::from_bases(s, 2.0 / std::pow(s, c), label));
    }
    return pts;
}

std::vector<TradeoffPoint> diagonal(const std::string& label)
{
    std::vector<TradeoffPoint> pts;
    for (int i = 0; i <= kLineSamples; ++i) {
        const double s = 1.0 + static_cast<double>(i) / kLineSamples;
        pts.push_back(TradeoffPoint::from_bases(s, s, label));
    }
    return pts;
}

HypercubeResult hypercube_table(const GridSpec& grid, const std::filesystem::path& cache_dir, int threads)
{
    if (!cache_dir.empty())
        if (auto hit = load_cached(cache_dir, grid))
            return *hit;
    HypercubeResult r = optimize(grid, {threads});
    if (!cache_dir.empty())
        store_cached(cache_dir, r);
    return r;
}

// Options shared by all subcommands; they may follow the subcommand name.
struct Globals {
    int threads = 0;
    double tolerance = 0.005;
    std::string cache_dir = ".qtradeoff-cache";
    bool no_cache = false;
    std::string out;
    GridSpec grid;
    std::vector<int> ks{6};
    int curve_grid = 2048;
    std::uint64_t seed = 42;
    int max_n = 12;

    std::filesystem::path cache() const { return no_cache ? std::filesystem::path{} : std::filesystem::path(cache_dir); }
};

class Runner {
public:
    Runner(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

    // Writes the artifact to --out (atomically) or stdout; the summary goes to
    // stdout when the artifact is on disk, stderr otherwise.
    void emit(const std::string& content)
    {
        if (g_.out.empty())
            out_ << content;
        else
            write_file_atomic(g_.out, content);
    }
    std::ostream& summary() { return g_.out.empty() ? err_ : out_; }
    std::string verdict(bool ok) const { return ok ? "PASS" : "FAIL"; }

    int curve(const std::string& kind)
    {
        if (g_.curve_grid < 2)
            throw std::invalid_argument("--grid must be >= 2");
        std::ostringstream line;
        bool ok = true;
        TradeoffCurve c;
        if (kind == "dnq-opt" || kind == "dnq-improved") {
            DnqSweep sweep;
            sweep.alpha_samples = g_.curve_grid;
            if (kind == "dnq-opt") {
                c = dnq_opt_curve(sweep);
                double best = 2.0;
                for (const auto& p : c.points())
                    best = std::min(best, std::max(p.space_base(), p.time_base()));
                const double delta = best - kDnqBalanceBase;
                ok = std::abs(delta) <= g_.tolerance;
                line << "balance_base=" << format_base(best) << " target=" << format_base(kDnqBalanceBase)
                     << " delta=" << fmt("%+.6f", delta);
            } else {
                c = dnq_improved_curve(sweep);
                const auto rep = check_band(c, {0.268, 0.201, g_.tolerance});
                ok = rep.passed;
                line << "band=0.268..0.201 worst_margin=" << fmt("%+.6f", rep.worst_margin);
            }
        } else if (kind == "pairwise") {
            c = pairwise_segment(g_.curve_grid);
            const auto fit = pairwise_fit();
            const double dc = fit.coefficient - 2.511;
            const double de = fit.exponent - 0.527;
            ok = std::abs(dc) <= g_.tolerance && std::abs(de) <= g_.tolerance;
            line << "coefficient=" << format_base(fit.coefficient) << " delta=" << fmt("%+.6f", dc)
                 << " exponent=" << format_base(fit.exponent) << " delta=" << fmt("%+.6f", de);
        } else {
            PairwiseSweep sweep;
            sweep.kappa_samples = g_.curve_grid;
            c = pairwise_extended_curve(sweep);
            const auto rep = check_band(c, {0.151, 0.088, g_.tolerance});
            ok = rep.passed;
            line << "band=0.151..0.088 worst_margin=" << fmt("%+.6f", rep.worst_margin);
        }
        emit(curve_to_csv(c));
        summary() << "curve " << kind << " points=" << c.size() << ' ' << line.str()
                  << " tolerance=" << g_.tolerance << " result=" << verdict(ok) << '\n';
        return ok ? 0 : 1;
    }

    int table()
    {
        std::string csv = "k,S_base,T_published,T_computed,delta,pass\n";
        bool all_ok = true;
        for (const int k : g_.ks) {
            GridSpec grid = g_.grid;
            grid.k = k;
            grid.validate();
            const HypercubeResult r = hypercube_table(grid, g_.cache(), g_.threads);
            double worst = 0.0;
            int cells = 0;
            bool ok = true;
            for (const auto& cell : published_complexities()) {
                if (cell.k != k)
                    continue;
                const double got = reproduce_cell(r, cell);
                const double delta = got - cell.t_base;
                const bool pass = std::abs(delta) <= g_.tolerance;
                ok = ok && pass;
                worst = std::max(worst, std::abs(delta));
                ++cells;
                csv += std::to_string(k) + ',' + (cell.s_base ? format_base(*cell.s_base) : std::string("S=T")) +
                       ',' + format_base(cell.t_base) + ',' + format_base(got) + ',' + fmt("%+.6f", delta) + ',' +
                       (pass ? "1" : "0") + '\n';
            }
            summary() << "table hypercube k=" << k << " cells=" << cells << " max_abs_delta=" << format_base(worst)
                      << " depth=" << r.depth_reached << " residual=" << fmt("%.3g", r.residual)
                      << " tolerance=" << g_.tolerance << " result=" << verdict(ok && cells > 0) << '\n';
            all_ok = all_ok && ok && cells > 0;
        }
        emit(csv);
        return all_ok ? 0 : 1;
    }

    int gamma()
    {
        bool all_ok = true;
        for (const int k : g_.ks) {
            const GammaResult r = unconstrained_gamma(k);
            double target = kGammaBase;
            for (const auto& cell : published_complexities())
                if (k < 6 && cell.k == k && !cell.s_base)
                    target = cell.t_base;
            const double delta = r.base - target;
            const bool ok = r.converged && std::abs(delta) <= g_.tolerance;
            std::string sched;
            for (const double a : r.schedule)
                sched += (sched.empty() ? "" : ";") + fmt("%.6f", a);
            out_ << "gamma k=" << k << " g=" << format_exponent(r.g) << " base=" << format_base(r.base)
                 << " schedule=" << sched << " target=" << format_base(target) << " delta=" << fmt("%+.6f", delta)
                 << " tolerance=" << g_.tolerance << " result=" << verdict(ok) << '\n';
            all_ok = all_ok && ok;
        }
        return all_ok ? 0 : 1;
    }

    int fractalize_chain(double s, double t, int times, bool classical, std::optional<double> target_s,
                         std::optional<double> target_t)
    {
        if (times < 0 || times > 32)
            throw std::invalid_argument("--times must lie in [0, 32]");
        std::vector<TradeoffPoint> chain{TradeoffPoint::from_bases(s, t, "step0")};
        for (int i = 1; i <= times; ++i) {
            TradeoffPoint next = classical ? fractalize_classical(chain.back()).point : fractalize(chain.back());
            next.label = "step" + std::to_string(i);
            chain.push_back(next);
        }
        std::string csv = std::string(kCurveCsvHeader) + '\n';
        for (const auto& p : chain)
            csv += format_curve_row(p, p.label) + '\n';
        emit(csv);
        const auto& last = chain.back();
        bool ok = true;
        std::ostringstream line;
        line << "fractalize steps=" << times << " last=(" << format_base(last.space_base()) << ','
             << format_base(last.time_base()) << ')';
        if (target_s) {
            const double d = last.space_base() - *target_s;
            ok = ok && std::abs(d) <= g_.tolerance;
            line << " delta_s=" << fmt("%+.6f", d);
        }
        if (target_t) {
            const double d = last.time_base() - *target_t;
            ok = ok && std::abs(d) <= g_.tolerance;
            line << " delta_t=" << fmt("%+.6f", d);
        }
        summary() << line.str() << " tolerance=" << g_.tolerance << " result=" << verdict(ok) << '\n';
        return ok ? 0 : 1;
    }

    int fit_c(double s, double t, std::optional<double> expect)
    {
        const double c = fit_power_law(TradeoffPoint::from_bases(s, t));
        bool ok = true;
        out_ << "fit-c S=" << format_base(s) << " T=" << format_base(t) << " c=" << format_base(c);
        if (expect) {
            const double d = c - *expect;
            ok = std::abs(d) <= g_.tolerance;
            out_ << " target=" << format_base(*expect) << " delta=" << fmt("%+.6f", d);
        }
        out_ << " tolerance=" << g_.tolerance << " result=" << verdict(ok) << '\n';
        return ok ? 0 : 1;
    }

    int band_check(const std::string& in_path, const BandSpec& spec)
    {
        std::ifstream in(in_path);
        if (!in)
            throw std::invalid_argument("--in: cannot open " + in_path);
        const TradeoffCurve curve(parse_curve_csv(in));
        const BandReport rep = check_band(curve, spec);
        out_ << "band-check c_low=" << spec.c_low << " c_high=" << spec.c_high << " checked=" << rep.checked
             << " worst_margin=" << fmt("%+.6f", rep.worst_margin) << " tolerance=" << spec.tol;
        if (rep.worst_point)
            out_ << " worst=(" << format_base(rep.worst_point->space_base()) << ','
                 << format_base(rep.worst_point->time_base()) << ") side=" << (rep.worst_is_upper ? "upper" : "lower");
        out_ << " result=" << verdict(rep.passed) << '\n';
        return rep.passed ? 0 : 1;
    }

    int validate(const std::string& suite)
    {
        SuiteOptions opts;
        opts.max_n = g_.max_n;
        opts.seed = g_.seed;
        bool ok = true;
        std::string text;
        for (const auto& r : run_validator_suite(opts)) {
            const bool tsp = r.name.find("held_karp") != std::string::npos ||
                             r.name.find("gurevich") != std::string::npos;
            if (suite == "tsp" ? !tsp : suite == "cube" ? tsp : false)
                continue;
            text += r.line() + '\n';
            ok = ok && r.passed;
        }
        emit(text);
        summary() << "validate suite=" << suite << " seed=" << g_.seed << " max_n=" << g_.max_n
                  << " result=" << verdict(ok) << '\n';
        return ok ? 0 : 1;
    }

    int cache(const std::string& action)
    {
        const std::filesystem::path dir = g_.cache_dir;
        std::vector<std::filesystem::path> files;
        if (std::filesystem::is_directory(dir))
            for (const auto& e : std::filesystem::directory_iterator(dir))
                if (e.is_regular_file() && e.path().extension() == ".json" &&
                    e.path().filename().string().rfind("hypercube_", 0) == 0)
                    files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            if (action == "clear")
                std::filesystem::remove(f);
            else
                out_ << f.filename().string() << ' ' << std::filesystem::file_size(f) << '\n';
        }
        out_ << "cache " << action << " dir=" << dir.string() << " files=" << files.size() << '\n';
        return 0;
    }

    int figure(const std::string& kind)
    {
        const auto series = kind == "dnq" ? dnq_figure() : permutation_figure(g_.cache(), g_.threads);
        emit(figure_to_csv(series));
        std::size_t n = 0;
        for (const auto& s : series)
            n += s.points.size();
        summary() << "figure " << kind << " series=" << series.size() << " points=" << n << " result=PASS\n";
        return 0;
    }

private:
    const Globals& g_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

std::vector<FigureSeries> dnq_figure()
{
    const DnqSweep sweep;
    const DnqBalance bal = dnq_opt_balance();
    return {
        {"dnq-opt", dnq_opt_curve(sweep).points()},
        {"dnq-improved", dnq_improved_curve(sweep).points()},
        {"band-low c=0.268", power_line(0.268, "band-low")},
        {"band-high c=0.201", power_line(0.201, "band-high")},
        {"T=S", diagonal("T=S")},
        {"reference", {{bal.exponent, bal.exponent, "reference"}}},
    };
}

std::vector<FigureSeries> permutation_figure(const std::filesystem::path& cache_dir, int threads)
{
    const GammaResult gamma = unconstrained_gamma(6);
    return {
        {"hypercube k=6", hypercube_table(GridSpec{}, cache_dir, threads).curve().points()},
        {"pairwise", pairwise_segment(PairwiseSweep{}.kappa_samples).points()},
        {"pairwise-extended", pairwise_extended_curve().points()},
        {"band-low c=0.161", power_line(0.161, "band-low")},
        {"band-high c=0.099", power_line(0.099, "band-high")},
        {"T=S", diagonal("T=S")},
        {"gamma k=6", {{gamma.g, gamma.g, "gamma"}}},
    };
}

std::string figure_to_csv(const std::vector<FigureSeries>& series)
{
    if (series.empty())
        throw std::invalid_argument("figure export: no series");
    std::string out = std::string(kCurveCsvHeader) + '\n';
    for (const auto& s : series)
        for (const auto& p : s.points)
            out += format_curve_row(p, s.label) + '\n';
    return out;
}

void export_figure_data(const std::vector<FigureSeries>& series, const std::filesystem::path& out)
{
    write_file_atomic(out, figure_to_csv(series));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantum time-space tradeoff curves for exponential dynamic programs", "qtradeoff"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value defaults; command-line flags take precedence");

    Globals g;
    app.add_option("--threads", g.threads, "OpenMP threads (0: machine default)")->check(CLI::NonNegativeNumber);
    app.add_option("--tolerance", g.tolerance, "Check tolerance in base terms")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", g.cache_dir, "Hypercube table cache directory");
    app.add_flag("--no-cache", g.no_cache, "Do not read or write the table cache");
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_option("--depth-cap", g.grid.depth_cap, "Maximum recursion depth r");
    app.add_option("--converge-tol", g.grid.converge_tol, "Stop when a round changes T by less");
    app.add_option("--s-grid", g.grid.s_grid, "Memory budget samples");
    app.add_option("--alpha-grid", g.grid.alpha_grid, "Layer parameter samples");
    app.add_option("--k", g.ks, "Number of layers (several allowed)")->expected(1, 8);
    app.add_option("--grid", g.curve_grid, "Curve sweep samples");
    app.add_option("--seed", g.seed, "Validator seed");
    app.add_option("--max-n", g.max_n, "Largest validator instance size");

    std::string curve_kind, table_kind, cache_action, figure_kind, suite = "all";
    auto* curve = app.add_subcommand("curve", "Tradeoff curve as CSV");
    curve->add_option("kind", curve_kind)
        ->required()
        ->check(CLI::IsMember({"dnq-opt", "dnq-improved", "pairwise", "pairwise-extended"}));
    auto* table = app.add_subcommand("table", "Reproduce the optimal-complexity table");
    table->add_option("kind", table_kind)->required()->check(CLI::IsMember({"hypercube"}));
    auto* gamma = app.add_subcommand("gamma", "Unconstrained balance solution");

    double fs = 0, ft = 0;
    int times = 1;
    bool classical = false;
    std::optional<double> target_s, target_t;
    auto* fract = app.add_subcommand("fractalize", "Repeated fractalization of a point (bases)");
    fract->add_option("--s", fs, "Space base")->required();
    fract->add_option("--t", ft, "Time base")->required();
    fract->add_option("--times", times, "Applications");
    fract->add_flag("--classical", classical, "Classical variant (sqrt(S), 2 sqrt(T))");
    fract->add_option("--target-s", target_s, "Expected final space base");
    fract->add_option("--target-t", target_t, "Expected final time base");

    double cs = 0, ct = 0;
    std::optional<double> expect;
    auto* fit = app.add_subcommand("fit-c", "c with T = 2 / S^c through a point (bases)");
    fit->add_option("--s", cs, "Space base")->required();
    fit->add_option("--t", ct, "Time base")->required();
    fit->add_option("--expect", expect, "Expected c");

    std::string band_in;
    BandSpec band;
    auto* bandc = app.add_subcommand("band-check", "Check a curve CSV against 2/S^c_low .. 2/S^c_high");
    bandc->add_option("--in", band_in, "Curve CSV")->required();
    bandc->add_option("--c-low", band.c_low, "Larger exponent (lower boundary)")->required();
    bandc->add_option("--c-high", band.c_high, "Smaller exponent (upper boundary)")->required();
    bandc->add_option("--s-min", band.s_min_base, "Smallest space base checked");
    bandc->add_option("--s-max", band.s_max_base, "Largest space base checked");

    auto* validate = app.add_subcommand("validate", "Run the brute-force oracle suite");
    validate->add_option("--suite", suite, "all, tsp or cube")->check(CLI::IsMember({"all", "tsp", "cube"}));
    auto* cache = app.add_subcommand("cache", "Inspect or clear the table cache");
    cache->add_option("action", cache_action)->required()->check(CLI::IsMember({"ls", "clear"}));
    auto* figure = app.add_subcommand("figure", "Export figure data as one labelled CSV");
    figure->add_option("kind", figure_kind)->required()->check(CLI::IsMember({"dnq", "permutation"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (g.threads > 0)
            omp_set_num_threads(g.threads);
        band.tol = g.tolerance;
        Runner run(g, out, err);
        if (*curve)
            return run.curve(curve_kind);
        if (*table)
            return run.table();
        if (*gamma)
            return run.gamma();
        if (*fract)
            return run.fractalize_chain(fs, ft, times, classical, target_s, target_t);
        if (*fit)
            return run.fit_c(cs, ct, expect);
        if (*bandc)
            return run.band_check(band_in, band);
        if (*validate)
            return run.validate(suite);
        if (*cache)
            return run.cache(cache_action);
        return run.figure(figure_kind);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace qtradeoff
