// Command-line front end: channel statistics reports, expansion evaluation,
// and the CSV sweeps behind the three standard comparison figures.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "fba/fba.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_precondition = 3;
constexpr int exit_numerical = 4;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    if (points <= 0) throw fba::parse_error("eps grid must have at least one point");
    if (!(lo > 0.0 && hi > 0.0 && lo < 1.0 && hi < 1.0))
        throw fba::parse_error("eps grid endpoints must lie in (0,1)");
    std::vector<double> out;
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < points; ++i)
        out.push_back(std::pow(10.0, llo + (lhi - llo) * double(i) / double(points - 1)));
    return out;
}

// Rows are independent; compute them concurrently and serialize in order.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::string& header, const std::vector<std::function<std::string()>>& rows) {
    std::vector<std::future<std::string>> futures;
    futures.reserve(rows.size());
    for (const auto& r : rows) futures.push_back(std::async(std::launch::async, r));
    std::ofstream out(path);
    if (!out) throw fba::parse_error("cannot open output file: " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    out << header << "\n";
    for (auto& f : futures) out << f.get() << "\n";
}

double bits_per_use(double log_m_nats, std::size_t n) {
    return log_m_nats / (double(n) * std::log(2.0));
}

int cmd_channel_stats(const std::string& file) {
    fba::Channel ch = fba::Channel::load(file);
    fba::ChannelStats st = fba::capacity_solve(ch);
    std::cout << "capacity_nats " << fmt(st.capacity) << "\n";
    std::cout << "caod";
    for (double q : st.caod) std::cout << ' ' << fmt(q);
    std::cout << "\n";
    std::cout << "caid";
    for (double w : st.caid.weights) std::cout << ' ' << fmt(w);
    std::cout << "\n";
    std::cout << "x_dagger";
    for (std::size_t x : st.x_dagger) std::cout << ' ' << x;
    std::cout << "\n";
    std::cout << "symmetric " << (st.symmetric ? "yes" : "no") << "\n";
    fba::dispersion(ch, st);
    std::cout << "v_min " << fmt(st.v_min) << "\n";
    std::cout << "v_max " << fmt(st.v_max) << "\n";
    fba::SingularityReport sing = fba::classify_singularity(ch, st);
    if (sing.degenerate) {
        std::cout << "classification degenerate\n";
        std::cerr << "error: precondition: zero information variance, skewness undefined\n";
        return exit_precondition;
    }
    fba::MomentSet m = fba::moments(ch, st.dispersion_achievers.front());
    std::cout << "eta " << fmt(m.eta) << "\n";
    std::cout << "sk_u " << fmt(m.sk_unconditional()) << "\n";
    std::cout << "classification " << (sing.is_singular ? "singular" : "nonsingular") << "\n";
    if (sing.is_singular) {
        std::cerr << "error: precondition: singular channel (eta = 1), skewness bounds undefined\n";
        return exit_precondition;
    }
    fba::SkewnessBounds sb = fba::skewness_bounds(ch, st);
    fba::GeometryBundle g = fba::geometry(ch, st, st.dispersion_achievers.front());
    std::cout << "a0 " << fmt(g.a0) << "\n";
    std::cout << "a1 " << fmt(g.a1) << "\n";
    std::cout << "s_lower " << fmt(sb.s_lower) << "\n";
    std::cout << "s_upper " << fmt(sb.s_upper) << "\n";
    return exit_ok;
}

int cmd_expand(const std::string& file, std::size_t n, double eps, int order,
               const std::string& side_name) {
    fba::Channel ch = fba::Channel::load(file);
    fba::ChannelStats st = fba::analyze_channel(ch);
    fba::RateModel model = fba::make_rate_model(ch, st);
    fba::Side side = side_name == "upper" ? fba::Side::upper : fba::Side::lower;
    fba::ExpansionResult r = fba::rate_expansion(model, n, eps, order, side);
    std::cout << "order " << r.order << "\n";
    std::cout << "side " << side_name << "\n";
    std::cout << "capacity_term " << fmt(r.capacity_term) << "\n";
    std::cout << "dispersion_term " << fmt(r.dispersion_term) << "\n";
    std::cout << "log_term " << fmt(r.log_term) << "\n";
    std::cout << "skewness_term " << fmt(r.skewness_term) << "\n";
    std::cout << "fourth_term " << fmt(r.fourth_term) << "\n";
    std::cout << "total_log_m_nats " << fmt(r.total_log_m) << "\n";
    std::cout << "rate_bits_per_use " << fmt(bits_per_use(r.total_log_m, n)) << "\n";
    return exit_ok;
}

int cmd_fig1(const std::vector<std::size_t>& ns, double eps_min, double eps_max, int eps_points,
             double p, const std::string& out) {
    std::vector<double> epss = log_spaced(eps_min, eps_max, eps_points);
    fba::Channel ch = fba::Channel::bsc(p);
    fba::ChannelStats st = fba::analyze_channel(ch);
    fba::RateModel model = fba::make_rate_model(ch, st);
    std::vector<std::function<std::string()>> rows;
    for (std::size_t n : ns)
        for (double eps : epss)
            rows.push_back([=]() {
                fba::BoundBracket b = fba::bracket(n, p, eps);
                double clt = fba::rate_expansion(model, n, eps, 2, fba::Side::lower).total_log_m;
                double lo = fba::rate_expansion(model, n, eps, 3, fba::Side::lower).total_log_m;
                double hi = fba::rate_expansion(model, n, eps, 3, fba::Side::upper).total_log_m;
                double o4 = fba::rate_expansion(model, n, eps, 4, fba::Side::lower).total_log_m;
                return fmt(double(n)) + "," + fmt(eps) + "," +
                       fmt(bits_per_use(b.log_m_achievable, n)) + "," +
                       fmt(bits_per_use(b.log_m_converse, n)) + "," +
                       fmt(bits_per_use(clt, n)) + "," + fmt(bits_per_use(lo, n)) + "," +
                       fmt(bits_per_use(hi, n)) + "," + fmt(bits_per_use(o4, n));
            });
    write_csv(out,
              {"rates in bits per channel use", "bsc crossover p = " + fmt(p),
               "log M in nats converted by log2(e)/n"},
              "n,eps,rate_rcu,rate_converse,rate_clt,rate_skew_lower,rate_skew_upper,rate_order4",
              rows);
    return exit_ok;
}

int cmd_fig2(const std::vector<std::size_t>& ns, double eps_min, double eps_max, int eps_points,
             double power, const std::string& out) {
    std::vector<double> epss = log_spaced(eps_min, eps_max, eps_points);
    std::vector<std::function<std::string()>> rows;
    for (std::size_t n : ns)
        for (double eps : epss)
            rows.push_back([=]() {
                double ach = fba::shannon_random_coding_logm(n, power, eps);
                double conv = fba::shannon_sphere_packing_logm(n, power, eps,
                                                               fba::PowerConstraint::maximal);
                fba::GaussianParams g = fba::gaussian_params(power);
                double qi = fba::q_inverse(eps);
                double clt = double(n) * g.capacity -
                             std::sqrt(double(n) * g.dispersion) * qi +
                             0.5 * std::log(double(n));
                double lo = fba::gaussian_expansion(power, n, eps, fba::Side::lower).total_log_m;
                double hi = fba::gaussian_expansion(power, n, eps, fba::Side::upper).total_log_m;
                return fmt(double(n)) + "," + fmt(eps) + "," + fmt(power) + "," +
                       fmt(bits_per_use(ach, n)) + "," + fmt(bits_per_use(conv, n)) + "," +
                       fmt(bits_per_use(clt, n)) + "," + fmt(bits_per_use(lo, n)) + "," +
                       fmt(bits_per_use(hi, n));
            });
    write_csv(out,
              {"rates in bits per channel use", "gaussian channel, maximal power P = " + fmt(power),
               "converse evaluated at blocklength n+1 (equal-to-maximal power relaxation)"},
              "n,eps,P,rate_shannon_ach,rate_shannon_conv,rate_clt,rate_thm4_lower,rate_thm4_upper",
              rows);
    return exit_ok;
}

int cmd_fig3(const std::vector<std::size_t>& ns, double eps_min, double eps_max, int eps_points,
             double bern_p, double bern_q, const std::string& out) {
    std::vector<double> epss = log_spaced(eps_min, eps_max, eps_points);
    fba::DiscreteDist p{1.0 - bern_p, bern_p};
    fba::DiscreteDist q{1.0 - bern_q, bern_q};
    fba::BhtMoments bm = fba::bht_moments(p, q);
    std::vector<std::function<std::string()>> rows;
    for (std::size_t n : ns)
        for (double eps : epss)
            rows.push_back([=]() {
                double exact = -fba::np_beta_exact_eps(p, q, n, eps).log_value;
                double o2 = fba::bht_expansion(bm, n, eps, 2).total_log_m;
                double o3 = fba::bht_expansion(bm, n, eps, 3).total_log_m;
                double o4 = fba::bht_expansion(bm, n, eps, 4).total_log_m;
                double ld = double(n) * bm.d;
                return fmt(double(n)) + "," + fmt(eps) + "," + fmt(exact) + "," + fmt(o2) + "," +
                       fmt(o3) + "," + fmt(o4) + "," + fmt(ld);
            });
    write_csv(out,
              {"-log beta_{1-eps} in nats",
               "H0: Bern(" + fmt(bern_p) + ")  H1: Bern(" + fmt(bern_q) + "), i.i.d. blocks"},
              "n,eps,exact_np,expansion_o2,expansion_o3,expansion_o4,ld_first_order", rows);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-blocklength coding-rate and hypothesis-testing asymptotics"};
    app.require_subcommand(1);

    std::string channel_file, out_path, side_name = "lower";
    std::vector<std::size_t> ns;
    double eps_min = 1e-10, eps_max = 1e-1, p = 0.11, power = 10.0, eps_single = 1e-3;
    std::vector<double> bern;
    int eps_points = 0;
    std::size_t n_single = 500;
    int order = 3;

    auto* stats = app.add_subcommand("channel-stats", "capacity, dispersion, skewness report");
    stats->add_option("file", channel_file, "channel transition matrix file")->required();

    auto* fig1 = app.add_subcommand("fig1", "BSC: exact bounds vs expansions, CSV");
    fig1->add_option("--n", ns, "blocklengths")->required();
    fig1->add_option("--eps-min", eps_min, "smallest error probability");
    fig1->add_option("--eps-max", eps_max, "largest error probability");
    fig1->add_option("--eps-points", eps_points, "grid size (log-spaced)")->required();
    fig1->add_option("--p", p, "BSC crossover probability");
    fig1->add_option("--out", out_path, "output CSV path")->required();

    auto* fig2 = app.add_subcommand("fig2", "Gaussian channel: Shannon bounds vs expansions, CSV");
    fig2->add_option("--n", ns, "blocklengths")->required();
    fig2->add_option("--eps-min", eps_min, "smallest error probability");
    fig2->add_option("--eps-max", eps_max, "largest error probability");
    fig2->add_option("--eps-points", eps_points, "grid size (log-spaced)")->required();
    fig2->add_option("--P", power, "SNR (maximal power constraint)");
    fig2->add_option("--out", out_path, "output CSV path")->required();

    auto* fig3 = app.add_subcommand("fig3", "BHT: exact Neyman-Pearson vs expansions, CSV");
    fig3->add_option("--n", ns, "blocklengths")->required();
    fig3->add_option("--eps-min", eps_min, "smallest type-I error");
    fig3->add_option("--eps-max", eps_max, "largest type-I error");
    fig3->add_option("--eps-points", eps_points, "grid size (log-spaced)")->required();
    fig3->add_option("--bern", bern, "Bernoulli parameters: P then Q")->expected(2);
    fig3->add_option("--out", out_path, "output CSV path")->required();

    auto* expand = app.add_subcommand("expand", "log M expansion with per-term breakdown");
    expand->add_option("--channel", channel_file, "channel transition matrix file")->required();
    expand->add_option("--n", n_single, "blocklength")->required();
    expand->add_option("--eps", eps_single, "error probability")->required();
    expand->add_option("--order", order, "expansion order")->check(CLI::IsMember({2, 3, 4}));
    expand->add_option("--side", side_name, "lower or upper")
        ->check(CLI::IsMember({"lower", "upper"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return exit_usage;
    }

    try {
        if (stats->parsed()) return cmd_channel_stats(channel_file);
        if (expand->parsed()) return cmd_expand(channel_file, n_single, eps_single, order, side_name);
        if (fig1->parsed()) return cmd_fig1(ns, eps_min, eps_max, eps_points, p, out_path);
        if (fig2->parsed()) return cmd_fig2(ns, eps_min, eps_max, eps_points, power, out_path);
        if (fig3->parsed()) {
            if (bern.size() != 2) throw fba::parse_error("fig3 requires --bern a b");
            return cmd_fig3(ns, eps_min, eps_max, eps_points, bern[0], bern[1], out_path);
        }
    } catch (const fba::parse_error& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return exit_usage;
    } catch (const fba::precondition_error& e) {
        std::cerr << "error: precondition: " << e.what() << "\n";
        return exit_precondition;
    } catch (const fba::numerical_error& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::domain_error& e) {
        std::cerr << "error: precondition: " << e.what() << "\n";
        return exit_precondition;
    }
    return exit_usage;
}
