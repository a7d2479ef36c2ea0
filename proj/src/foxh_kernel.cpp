#include "foxh_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "sobol.hpp"

namespace risfox::foxh::detail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxTable = std::size_t{1} << 23;

// Denominator Gammas may sit on a pole, where 1/Gamma vanishes.
cplx signed_log_gamma(double sign, cplx arg) {
    if (sign < 0.0) {
        const double nearest = std::round(arg.real());
        if (nearest <= 0.0 && std::abs(arg - cplx(nearest, 0.0)) < 1e-12) {
            return cplx(-800.0, 0.0);
        }
    }
    return sign * log_gamma(arg);
}

std::size_t support_size(const GammaTerm& t) {
    return static_cast<std::size_t>(
        std::count_if(t.coeffs.begin(), t.coeffs.end(), [](double c) { return c != 0.0; }));
}

double term_sign(const GammaTerm& t) { return t.sign == Factor::numerator ? 1.0 : -1.0; }

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

cplx CoupledTerm::eval(const long* k) const {
    if (lattice) {
        long m = 0;
        for (std::size_t j = 0; j < slopes.size(); ++j) m += mult[j] * k[slopes[j].first];
        return table[static_cast<std::size_t>(m - m_min)];
    }
    double im = 0.0;
    for (const auto& [pos, q] : slopes) im += q * static_cast<double>(k[pos]);
    return signed_log_gamma(sign, base + cplx(0.0, im));
}

std::vector<std::size_t> coupled_term_indices(const FoxHSpec& spec) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        if (support_size(spec.terms[t]) >= 2) out.push_back(t);
    }
    return out;
}

Axis build_axis(const FoxHSpec& spec, std::size_t var, double anchor, double T, double h,
                std::span<const std::size_t> coupled_terms) {
    const long cap = std::max(1L, static_cast<long>(std::floor(T / h)));
    const cplx log_x = std::log(spec.args[var].value());

    std::vector<const GammaTerm*> own;
    for (const auto& t : spec.terms) {
        if (support_size(t) == 1 && t.coeffs[var] != 0.0) own.push_back(&t);
    }
    // Denominator couplings can grow like exp(pi/2 |slope| |Im s|) along this axis.
    double growth = 0.0;
    for (std::size_t idx : coupled_terms) {
        const GammaTerm& t = spec.terms[idx];
        if (t.sign == Factor::denominator && t.coeffs[var] != 0.0) {
            growth += 0.5 * kPi * std::abs(t.coeffs[var]);
        }
    }

    std::vector<cplx> full(static_cast<std::size_t>(2 * cap + 1));
    std::vector<double> env(full.size());
    for (long k = -cap; k <= cap; ++k) {
        const cplx s(anchor, static_cast<double>(k) * h);
        cplx v = -s * log_x;
        for (const GammaTerm* t : own) {
            v += signed_log_gamma(term_sign(*t), t->offset + t->slope(var) * s);
        }
        const auto i = static_cast<std::size_t>(k + cap);
        full[i] = v;
        env[i] = v.real() + growth * std::abs(s.imag());
    }

    const double peak = *std::max_element(env.begin(), env.end());
    long K = 0;
    for (long k = cap; k > 0; --k) {
        if (env[static_cast<std::size_t>(k + cap)] >= peak - T ||
            env[static_cast<std::size_t>(-k + cap)] >= peak - T) {
            K = k;
            break;
        }
    }
    K = std::max(K, 2L);
    K = std::min(K, cap);

    Axis ax;
    ax.var = var;
    ax.anchor = anchor;
    ax.h = h;
    ax.K = K;
    ax.sep_log.assign(full.begin() + (cap - K), full.begin() + (cap + K + 1));
    const double edge = std::min(env[static_cast<std::size_t>(cap + K)],
                                 env[static_cast<std::size_t>(cap - K)]);
    ax.decay_rate = (peak - edge) / (static_cast<double>(K) * h);
    return ax;
}

TensorPlan build_tensor_plan(const FoxHSpec& spec, std::span<const double> anchors, double T,
                             double h) {
    const std::size_t D = spec.num_vars;
    const auto coupled = coupled_term_indices(spec);

    // Most-coupled variables outermost so partially coupled terms hoist out
    // of the inner loops.
    std::vector<std::size_t> order(D);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> uses(D, 0);
    for (std::size_t idx : coupled) {
        for (std::size_t j = 0; j < D; ++j) {
            if (spec.terms[idx].coeffs[j] != 0.0) ++uses[j];
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return uses[a] > uses[b]; });
    std::vector<std::size_t> position(D);
    for (std::size_t p = 0; p < D; ++p) position[order[p]] = p;

    TensorPlan plan;
    plan.axes.reserve(D);
    for (std::size_t p = 0; p < D; ++p) {
        plan.axes.push_back(build_axis(spec, order[p], anchors[order[p]], T, h, coupled));
    }
    plan.coupled_at.resize(D);

    plan.symmetric = std::all_of(spec.args.begin(), spec.args.end(),
                                 [](const ComplexValue& x) { return x.im() == 0.0 && x.re() > 0.0; });

    for (const auto& t : spec.terms) {
        if (support_size(t) == 0) plan.const_log += signed_log_gamma(term_sign(t), t.offset);
    }

    for (std::size_t idx : coupled) {
        const GammaTerm& t = spec.terms[idx];
        CoupledTerm ct;
        ct.sign = term_sign(t);
        double re = t.offset;
        std::size_t depth = 0;
        for (std::size_t j = 0; j < D; ++j) {
            if (t.coeffs[j] == 0.0) continue;
            re += t.slope(j) * anchors[j];
            ct.slopes.emplace_back(position[j], t.slope(j) * h);
            depth = std::max(depth, position[j]);
        }
        ct.base = cplx(re, 0.0);

        double evaluations = 1.0;
        for (std::size_t p = 0; p <= depth; ++p) {
            evaluations *= static_cast<double>(2 * plan.axes[p].K + 1);
        }
        double qmin = std::numeric_limits<double>::infinity();
        for (const auto& sl : ct.slopes) qmin = std::min(qmin, std::abs(sl.second));
        for (int n = 1; n <= 12 && !ct.lattice; ++n) {
            const double delta = qmin / n;
            std::vector<long> mult;
            bool ok = true;
            long M = 0;
            for (const auto& [pos, q] : ct.slopes) {
                const double r = q / delta;
                const long m = std::lround(r);
                if (std::abs(r - static_cast<double>(m)) > 1e-9 * std::max(1.0, std::abs(r))) {
                    ok = false;
                    break;
                }
                mult.push_back(m);
                M += std::abs(m) * plan.axes[pos].K;
            }
            const auto size = static_cast<std::size_t>(2 * M + 1);
            if (!ok || size > kMaxTable || static_cast<double>(size) * 4.0 > evaluations) continue;
            ct.lattice = true;
            ct.mult = std::move(mult);
            ct.m_min = -M;
            ct.table.resize(size);
            for (long m = -M; m <= M; ++m) {
                ct.table[static_cast<std::size_t>(m + M)] =
                    signed_log_gamma(ct.sign, ct.base + cplx(0.0, static_cast<double>(m) * delta));
            }
        }
        plan.coupled_at[depth].push_back(std::move(ct));
    }
    return plan;
}

namespace {

struct Walker {
    const TensorPlan& plan;
    TensorSums sums;
    long k[kMaxDims] = {};

    void walk(std::size_t d, cplx acc, bool even, bool inner, double w) {
        const Axis& ax = plan.axes[d];
        const auto& coupled = plan.coupled_at[d];
        const bool last = d + 1 == plan.axes.size();
        for (long kk = -ax.K; kk <= ax.K; ++kk) {
            k[d] = kk;
            cplx lg = acc + ax.sep_log[static_cast<std::size_t>(kk + ax.K)];
            for (const auto& t : coupled) lg += t.eval(k);
            const bool e = even && (kk % 2 == 0);
            const bool in = inner && (2 * std::abs(kk) <= ax.K);
            if (!last) {
                walk(d + 1, lg, e, in, w);
                continue;
            }
            const double mag = w * std::exp(lg.real());
            const double v = mag * std::cos(lg.imag());
            sums.full += v;
            sums.l1 += mag;
            if (e) sums.coarse += v;
            if (in) sums.inner += v;
            ++sums.nodes;
        }
    }
};

TensorSums slab_sum(const TensorPlan& plan, long k0) {
    const Axis& ax0 = plan.axes[0];
    const double w = (plan.symmetric && k0 != 0) ? 2.0 : 1.0;
    const cplx lg = plan.const_log + ax0.sep_log[static_cast<std::size_t>(k0 + ax0.K)];
    const bool even = k0 % 2 == 0;
    const bool inner = 2 * std::abs(k0) <= ax0.K;
    Walker walker{plan, {}, {}};
    walker.k[0] = k0;
    if (plan.axes.size() == 1) {
        const double mag = w * std::exp(lg.real());
        const double v = mag * std::cos(lg.imag());
        walker.sums = {v, even ? v : 0.0, inner ? v : 0.0, mag, 1};
        return walker.sums;
    }
    walker.walk(1, lg, even, inner, w);
    return walker.sums;
}

}  // namespace

TensorSums tensor_sum(const TensorPlan& plan, Exec exec) {
    const long K0 = plan.axes[0].K;
    const long first = plan.symmetric ? 0 : -K0;
    const auto n = static_cast<std::size_t>(K0 - first + 1);
    std::vector<double> full(n), coarse(n), inner(n), l1(n);
    std::vector<std::size_t> nodes(n);

    auto run = [&](std::size_t i) {
        const TensorSums s = slab_sum(plan, first + static_cast<long>(i));
        full[i] = s.full;
        coarse[i] = s.coarse;
        inner[i] = s.inner;
        l1[i] = s.l1;
        nodes[i] = s.nodes;
    };
    if (exec == Exec::parallel) {
        const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) run(i);
    }

    TensorSums out;
    out.full = pairwise_sum(full);
    out.coarse = pairwise_sum(coarse);
    out.inner = pairwise_sum(inner);
    out.l1 = pairwise_sum(l1);
    out.nodes = std::accumulate(nodes.begin(), nodes.end(), std::size_t{0});
    return out;
}

QmcResult qmc_integrate(const FoxHSpec& spec, std::span<const double> anchors, double T, double h,
                        std::size_t samples, std::size_t replicates, std::uint64_t seed,
                        Exec exec) {
    const std::size_t D = spec.num_vars;
    const auto coupled = coupled_term_indices(spec);

    struct Box {
        double anchor, half, scale, f_lo, f_hi;
    };
    std::vector<Box> box(D);
    for (std::size_t j = 0; j < D; ++j) {
        const Axis ax = build_axis(spec, j, anchors[j], T, h, coupled);
        Box b;
        b.anchor = anchors[j];
        b.half = static_cast<double>(ax.K) * h;
        // Logistic sampling density with tails a little heavier than the integrand's.
        const double rate = std::clamp(0.5 * ax.decay_rate, 0.05, 5.0);
        b.scale = 1.0 / rate;
        b.f_lo = 1.0 / (1.0 + std::exp(b.half / b.scale));
        b.f_hi = 1.0 - b.f_lo;
        box[j] = b;
    }

    struct Compiled {
        double sign, offset;
        std::vector<std::pair<std::size_t, double>> slopes;
    };
    std::vector<Compiled> terms;
    for (const auto& t : spec.terms) {
        Compiled c{term_sign(t), t.offset, {}};
        for (std::size_t j = 0; j < D; ++j) {
            if (t.coeffs[j] != 0.0) c.slopes.emplace_back(j, t.slope(j));
        }
        terms.push_back(std::move(c));
    }
    std::vector<cplx> log_x(D);
    for (std::size_t j = 0; j < D; ++j) log_x[j] = std::log(spec.args[j].value());

    const std::size_t per = std::max<std::size_t>(1, samples / replicates);
    std::vector<double> means(replicates), l1s(replicates);

    auto run = [&](std::size_t r) {
        std::uint64_t state = seed ^ (0xa0761d6478bd642fULL * (r + 1));
        std::vector<std::uint32_t> shift(D), raw(D);
        for (auto& m : shift) m = static_cast<std::uint32_t>(splitmix64(state) >> 32);
        risfox::detail::Sobol sobol(D);
        std::vector<cplx> s(D);
        std::vector<double> vals(per), mags(per);
        for (std::size_t i = 0; i < per; ++i) {
            sobol.next(raw.data());
            double weight = 1.0;
            for (std::size_t j = 0; j < D; ++j) {
                const double u = (static_cast<double>(raw[j] ^ shift[j]) + 0.5) * 0x1p-32;
                const Box& b = box[j];
                const double F = b.f_lo + u * (b.f_hi - b.f_lo);
                const double tau = b.scale * std::log(F / (1.0 - F));
                weight *= b.scale * (b.f_hi - b.f_lo) / (F * (1.0 - F));
                s[j] = cplx(b.anchor, tau);
            }
            cplx lg = 0.0;
            for (std::size_t j = 0; j < D; ++j) lg -= s[j] * log_x[j];
            for (const auto& t : terms) {
                cplx arg = t.offset;
                for (const auto& [j, sl] : t.slopes) arg += sl * s[j];
                lg += signed_log_gamma(t.sign, arg);
            }
            const double mag = weight * std::exp(lg.real());
            vals[i] = mag * std::cos(lg.imag());
            mags[i] = mag;
        }
        means[r] = pairwise_sum(vals) / static_cast<double>(per);
        l1s[r] = pairwise_sum(mags) / static_cast<double>(per);
    };
    if (exec == Exec::parallel) {
        const auto count = static_cast<long>(replicates);
#pragma omp parallel for schedule(dynamic)
        for (long r = 0; r < count; ++r) run(static_cast<std::size_t>(r));
    } else {
        for (std::size_t r = 0; r < replicates; ++r) run(r);
    }

    const double norm = std::pow(2.0 * kPi, -static_cast<double>(D));
    const double R = static_cast<double>(replicates);
    const double mean = pairwise_sum(means) / R;
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    QmcResult out;
    out.mean = norm * mean;
    out.std_error = replicates > 1 ? norm * std::sqrt(ss / (R - 1.0) / R) : 0.0;
    out.l1 = norm * pairwise_sum(l1s) / R;
    out.samples = per * replicates;
    return out;
}

}  // namespace risfox::foxh::detail
