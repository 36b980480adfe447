#include "psense/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "psense/rng.hpp"

namespace psense {

std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(std::stoll(s));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.size() > 12) throw std::invalid_argument("rational: too many decimal digits");
    long long den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    bool neg = !head.empty() && head[0] == '-';
    long long whole = (head.empty() || head == "-" || head == "+") ? 0 : std::stoll(head);
    long long frac = tail.empty() ? 0 : std::stoll(tail);
    Rat r = Rat(std::llabs(whole)) + Rat(frac, den);
    return (neg || whole < 0) ? -r : r;
}

WeightSpec normalize(const std::vector<Rat>& raw) {
    if (raw.empty()) throw std::invalid_argument("normalize: no weights");
    Rat scale{0};
    for (const Rat& r : raw) scale = std::max(scale, boost::abs(r));
    if (scale == Rat(0)) throw std::invalid_argument("normalize: all weights are zero");
    WeightSpec w;
    w.raw = raw;
    w.scale = scale;
    for (const Rat& r : raw) w.normalized.push_back(r / scale);
    return w;
}

std::vector<Rat> Schedule::chain_integrals(std::size_t n_chains) const {
    std::vector<Rat> sums(n_chains, Rat(0));
    for (const auto& seg : segments)
        for (auto [chain, sign] : seg.active) {
            if (chain < 0 || std::size_t(chain) >= n_chains)
                throw std::invalid_argument("chain_integrals: chain id out of range");
            sums[std::size_t(chain)] += Rat(sign) * seg.duration;
        }
    return sums;
}

Schedule compile_parallel(const WeightSpec& w, const Rat& t) {
    if (t <= Rat(0)) throw std::invalid_argument("compile_parallel: t must be positive");
    Schedule sch;
    sch.mode = Schedule::Mode::parallel;
    sch.t = t;
    sch.dwell = t;

    // per-chain flip point: +1 for the first (1+s)/2 fraction, then -1
    std::vector<Rat> flip;
    std::set<Rat> cuts{Rat(0), t};
    for (const Rat& s : w.normalized) {
        Rat tau = t * (Rat(1) + s) / Rat(2);
        flip.push_back(tau);
        cuts.insert(tau);
    }
    std::vector<Rat> grid(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Segment seg;
        seg.duration = grid[i + 1] - grid[i];
        if (seg.duration == Rat(0)) continue;
        for (std::size_t a = 0; a < w.normalized.size(); ++a)
            seg.active.emplace_back(int(a), grid[i + 1] <= flip[a] ? 1 : -1);
        sch.segments.push_back(std::move(seg));
    }
    sch.hole_moves.assign(sch.segments.size(), {});

    auto sums = sch.chain_integrals(w.normalized.size());
    for (std::size_t a = 0; a < sums.size(); ++a)
        if (sums[a] != t * w.normalized[a])
            throw std::logic_error("compile_parallel: inexact chain integral");
    return sch;
}

Schedule compile_sequential(const WeightSpec& w, const Rat& t) {
    if (t <= Rat(0)) throw std::invalid_argument("compile_sequential: t must be positive");
    Schedule sch;
    sch.mode = Schedule::Mode::sequential;
    sch.t = t;
    sch.dwell = Rat(0);
    for (std::size_t a = 0; a < w.normalized.size(); ++a) {
        const Rat& s = w.normalized[a];
        if (s == Rat(0)) continue;  // zero-duration dwell dropped
        Segment seg;
        seg.duration = t * boost::abs(s);
        seg.active.emplace_back(int(a), s > Rat(0) ? 1 : -1);
        sch.dwell += seg.duration;
        sch.segments.push_back(std::move(seg));
    }
    sch.hole_moves.assign(sch.segments.size(), {});

    auto sums = sch.chain_integrals(w.normalized.size());
    Rat total{0};
    for (const Rat& s : w.normalized) total += boost::abs(s);
    if (sch.dwell != t * total)
        throw std::logic_error("compile_sequential: dwell time mismatch");
    for (std::size_t a = 0; a < sums.size(); ++a)
        if (sums[a] != t * w.normalized[a])
            throw std::logic_error("compile_sequential: inexact chain integral");
    return sch;
}

std::pair<double, double> ramsey_probabilities(double q, double t) {
    if (t < 0) throw std::invalid_argument("ramsey_probabilities: negative time");
    double c = std::cos(q * t);
    return {0.5 * (1.0 + c), 0.5 * (1.0 - c)};
}

RamseyResult simulate(double q_true, double t, long long nu, std::uint64_t seed, int batches) {
    if (nu < 1) throw std::invalid_argument("simulate: need at least one repetition");
    if (batches < 1) throw std::invalid_argument("simulate: need at least one batch");
    RamseyResult res;
    res.q_true = q_true;
    res.t = t;
    res.nu = nu;
    res.batches = batches;
    res.seed = seed;
    res.fisher = t * t;

    const double qt = q_true * t;
    if (!(qt > 0.0 && qt < M_PI)) res.fringe_warning = true;
    const double p_plus = ramsey_probabilities(q_true, t).first;

    res.estimates.reserve(std::size_t(batches));
    for (int b = 0; b < batches; ++b) {
        std::uint64_t rng = derive_seed(seed, std::uint64_t(b));
        long long hits = 0;
        for (long long i = 0; i < nu; ++i)
            if (uniform01(rng) < p_plus) ++hits;
        double phat = double(hits) / double(nu);
        if (phat <= 0.0 || phat >= 1.0) res.fringe_warning = true;
        double arg = std::clamp(2.0 * phat - 1.0, -1.0, 1.0);
        res.estimates.push_back(std::acos(arg) / t);
    }
    res.mean_estimate =
        std::accumulate(res.estimates.begin(), res.estimates.end(), 0.0) / double(batches);
    if (batches >= 2) {
        double ss = 0;
        for (double e : res.estimates) ss += (e - res.mean_estimate) * (e - res.mean_estimate);
        res.variance = ss / double(batches - 1);
    }
    return res;
}

double fisher(double q, double t) {
    (void)q;  // the binary fringe has constant information
    return t * t;
}

}  // namespace psense
