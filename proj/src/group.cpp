#include "schottky/group.hpp"

#include <algorithm>
#include <cmath>

#include "schottky/errors.hpp"

namespace schottky {

ReducedWord ReducedWord::from_letters(std::vector<Letter> letters) {
    if (!is_reduced(letters)) throw NotReducedError();
    return ReducedWord(std::move(letters));
}

bool ReducedWord::is_reduced(const std::vector<Letter>& letters) {
    for (const auto& [gen, sign] : letters)
        if (gen < 1 || (sign != 1 && sign != -1)) return false;
    for (size_t i = 0; i + 1 < letters.size(); ++i)
        if (letters[i].first == letters[i + 1].first && letters[i].second != letters[i + 1].second)
            return false;
    return true;
}

std::string ReducedWord::str() const {
    if (letters_.empty()) return "id";
    std::string out;
    for (const auto& [gen, sign] : letters_) {
        if (!out.empty()) out += ' ';
        out += "g" + std::to_string(gen);
        if (sign < 0) out += "^-1";
    }
    return out;
}

namespace {

// Orthonormal basis of the graph {(x, t x)} over C^m + C^m; t may be
// "infinity", meaning the second factor itself.
Matrix graph_subspace(int m, double t, bool infinite) {
    Matrix b = Matrix::Zero(2 * m, m);
    if (infinite) {
        b.bottomRows(m) = Matrix::Identity(m, m);
        return b;
    }
    const double scale = 1.0 / std::sqrt(1.0 + t * t);
    b.topRows(m) = scale * Matrix::Identity(m, m);
    b.bottomRows(m) = (t * scale) * Matrix::Identity(m, m);
    return b;
}

std::vector<ProjSubspace> default_nori_config(int n, int g) {
    const int m = (n + 1) / 2;
    std::vector<ProjSubspace> cfg;  // L_1..L_g, then L_{g+1}..L_{2g}
    std::vector<std::pair<double, bool>> lows, highs;
    lows.emplace_back(0.0, true);   // L_1 = W_inf
    highs.emplace_back(0.0, false); // L_{g+1} = W_0
    for (int j = 2; j <= g; ++j) {
        const double t = static_cast<double>(j - 1);
        lows.emplace_back(t, false);        // L_j = W_t
        highs.emplace_back(-1.0 / t, false); // L_{g+j} = W_{-1/t}, orthogonal to W_t
    }
    for (const auto& [t, inf] : lows) cfg.push_back(ProjSubspace::from_orthonormal(graph_subspace(m, t, inf)));
    for (const auto& [t, inf] : highs) cfg.push_back(ProjSubspace::from_orthonormal(graph_subspace(m, t, inf)));
    return cfg;
}

}  // namespace

SchottkyData nori_build(int n, int g, double alpha, const std::vector<ProjSubspace>* subspace_config) {
    if (n < 3 || n % 2 == 0) throw BadDimensionError("n must be odd and >= 3");
    if (g < 1) throw BadDimensionError("g must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5)) throw AlphaOutOfRangeError();
    const int k = (n - 1) / 2;

    std::vector<ProjSubspace> cfg = subspace_config ? *subspace_config : default_nori_config(n, g);
    if (static_cast<int>(cfg.size()) != 2 * g)
        throw SubspacesNotDisjointError("subspace_config must have 2g entries");
    for (const auto& sub : cfg) {
        if (sub.ambient_dim() != n) throw DimensionMismatchError();
        if (sub.proj_dim() != k) throw BadDimensionError("subspaces must have projective dimension k");
    }
    for (size_t i = 0; i < cfg.size(); ++i)
        for (size_t j = i + 1; j < cfg.size(); ++j)
            if (intersect(cfg[i], cfg[j]))
                throw SubspacesNotDisjointError("subspaces " + std::to_string(i + 1) + " and " +
                                                std::to_string(j + 1) + " intersect");

    const double lambda = 1.0 / alpha - 1.0;
    SchottkyData data;
    data.n = n;
    const int m = k + 1;
    for (int j = 1; j <= g; ++j) {
        const ProjSubspace& low = cfg[static_cast<size_t>(j - 1)];       // L_j, where phi_j = 0
        const ProjSubspace& high = cfg[static_cast<size_t>(g + j - 1)];  // L_{g+j}, where phi_j = 1
        Matrix adapted(n + 1, n + 1);
        adapted.leftCols(m) = high.basis();
        adapted.rightCols(m) = low.basis();
        if (inverse_condition(adapted) <= tol::invertible)
            throw SubspacesNotDisjointError("pair " + std::to_string(j) + " is not complementary");
        const Matrix inv = adapted.inverse();

        Matrix scaling = Matrix::Identity(n + 1, n + 1);
        scaling.topLeftCorner(m, m) *= lambda;
        data.generators.push_back(ProjMap::from_lift(adapted * scaling * inv));

        Matrix head = Matrix::Zero(n + 1, n + 1);
        head.topLeftCorner(m, m) = Matrix::Identity(m, m);
        Matrix tail = Matrix::Zero(n + 1, n + 1);
        tail.bottomRightCorner(m, m) = Matrix::Identity(m, m);
        const Matrix full = hermitize(inv.adjoint() * inv);
        const Matrix phi_head = hermitize(inv.adjoint() * head * inv);
        const Matrix phi_tail = hermitize(inv.adjoint() * tail * inv);
        // R_j = {phi_j < alpha}, S_j = {phi_j > 1 - alpha} = {1 - phi_j < alpha}
        QuadricRegion rj = QuadricRegion::from_forms(phi_head, alpha * full);
        QuadricRegion sj = QuadricRegion::from_forms(phi_tail, alpha * full);
        data.regions.emplace_back(std::move(rj), std::move(sj));
    }
    return data;
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.status == CheckStatus::Pass; });
}

bool VerificationReport::any_failed() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.status == CheckStatus::Fail; });
}

namespace {

const QuadricRegion& region_by_flat_index(const SchottkyData& s, int idx) {
    const auto& pair = s.regions[static_cast<size_t>(idx / 2)];
    return (idx % 2 == 0) ? pair.first : pair.second;
}

std::string flat_region_name(int idx) {
    const int gen = idx / 2 + 1;
    return (idx % 2 == 0 ? "R" : "S") + std::to_string(gen);
}

}  // namespace

VerificationReport verify_schottky(const SchottkyData& s, int samples, std::uint64_t seed) {
    VerificationReport rep;
    const int g = s.genus();

    {
        AxiomCheck c;
        c.name = "generator-count";
        if (g >= 2) {
            c.status = CheckStatus::Pass;
            c.detail = "g = " + std::to_string(g);
        } else {
            c.status = CheckStatus::Fail;
            c.detail = "definition requires g >= 2, got g = " + std::to_string(g);
        }
        rep.checks.push_back(std::move(c));
    }

    // 1a: each region open and equal to Int(closure): indefinite signature
    for (int i = 0; i < 2 * g; ++i) {
        const QuadricRegion& r = region_by_flat_index(s, i);
        AxiomCheck c;
        c.name = "regular-" + flat_region_name(i);
        const auto sig = r.signature();
        if (r.is_regular()) {
            c.status = CheckStatus::Pass;
            c.detail = "signature (+" + std::to_string(sig.positive) + ", -" + std::to_string(sig.negative) +
                       ", 0:" + std::to_string(sig.zero) + ")";
        } else {
            c.status = CheckStatus::Fail;
            c.detail = "difference form not indefinite";
        }
        rep.checks.push_back(std::move(c));
    }

    // 1b: pairwise disjoint closures
    for (int i = 0; i < 2 * g; ++i) {
        for (int j = i + 1; j < 2 * g; ++j) {
            AxiomCheck c;
            c.name = "disjoint-" + flat_region_name(i) + "-" + flat_region_name(j);
            const auto res = region_disjoint(region_by_flat_index(s, i), region_by_flat_index(s, j),
                                             samples, seed + static_cast<std::uint64_t>(i * 64 + j));
            switch (res.kind) {
                case DisjointnessResult::Kind::Disjoint:
                    c.status = CheckStatus::Pass;
                    c.detail = "definite combination at mu = " + std::to_string(res.mu);
                    c.certificate_mu = res.mu;
                    c.certificate_margin = res.min_eigenvalue;
                    break;
                case DisjointnessResult::Kind::Overlap:
                    c.status = CheckStatus::Fail;
                    c.detail = "witness in both closures (s1 = " + std::to_string(res.witness_s1) +
                               ", s2 = " + std::to_string(res.witness_s2) + ")";
                    c.witness = res.witness;
                    break;
                case DisjointnessResult::Kind::Unknown:
                    c.status = CheckStatus::Unknown;
                    c.detail = "no certificate and no sampled counterexample";
                    break;
            }
            rep.checks.push_back(std::move(c));
        }
    }

    // 2: mapping axiom gamma_j(R_j) = P^n - closure(S_j)
    SphereSampler sampler(seed + 1000003);
    for (int j = 0; j < g; ++j) {
        AxiomCheck c;
        c.name = "mapping-g" + std::to_string(j + 1);
        const ProjMap& gamma = s.generators[static_cast<size_t>(j)];
        const QuadricRegion& rj = s.regions[static_cast<size_t>(j)].first;
        const QuadricRegion& sj = s.regions[static_cast<size_t>(j)].second;
        const QuadricRegion image = region_image(rj, gamma);
        const QuadricRegion target = sj.closure_complement();
        Complex scale;
        if (proportional(image.difference_form(), target.difference_form(), 1e-9, &scale) &&
            scale.real() > 0.0 && std::abs(scale.imag()) <= 1e-9 * std::abs(scale)) {
            c.status = CheckStatus::Pass;
            c.detail = "exact form-pair identity (scale " + std::to_string(scale.real()) + ")";
        } else {
            // two-sided sampled inclusion
            c.status = CheckStatus::Pass;
            c.detail = "sampled two-sided inclusion, " + std::to_string(samples) + " points";
            const int dim = s.n + 1;
            const ProjMap inv = gamma.inverse();
            for (int i = 0; i < samples; ++i) {
                const Vector x = sampler.sphere_vector(dim);
                const ProjPoint p = canonicalize(x);
                if (rj.eval(p) < -tol::boundary) {
                    const ProjPoint q = gamma.apply(p);
                    if (target.eval(q) >= 0.0) {
                        c.status = CheckStatus::Fail;
                        c.detail = "gamma(R) escapes P^n - closure(S)";
                        c.witness = q;
                        break;
                    }
                }
                if (target.eval(p) < -tol::boundary) {
                    const ProjPoint q = inv.apply(p);
                    if (rj.eval(q) >= 0.0) {
                        c.status = CheckStatus::Fail;
                        c.detail = "gamma^-1(P^n - closure(S)) escapes R";
                        c.witness = p;
                        break;
                    }
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    rep.notes.push_back(
        "S regions use the exact image threshold {phi > 1 - alpha}; with the literal {phi > alpha} "
        "the closures of R and S share {phi = alpha} and the mapping identity fails unless alpha = 1/2.");
    return rep;
}

DomainLocation fundamental_domain_membership(const SchottkyData& s, const ProjPoint& p, double boundary_tol) {
    bool on_boundary = false;
    for (int j = 0; j < s.genus(); ++j) {
        for (int side = 0; side < 2; ++side) {
            const QuadricRegion& r = side == 0 ? s.regions[static_cast<size_t>(j)].first
                                               : s.regions[static_cast<size_t>(j)].second;
            switch (r.membership(p, boundary_tol)) {
                case Membership::Inside:
                    return DomainLocation{DomainLocation::Kind::InRegion, j + 1, side == 0 ? 'R' : 'S'};
                case Membership::Boundary:
                    on_boundary = true;
                    break;
                case Membership::Outside:
                    break;
            }
        }
    }
    if (on_boundary) return DomainLocation{DomainLocation::Kind::BoundaryF, 0, 'R'};
    return DomainLocation{DomainLocation::Kind::InteriorF, 0, 'R'};
}

RegionRef word_image_region(const SchottkyData& s, const ReducedWord& w) {
    if (w.empty()) throw NotReducedError("word must be nonempty");
    const auto& [gen, sign] = w.letters().front();
    if (gen > s.genus()) throw DimensionMismatchError("word uses a generator the data does not have");
    return RegionRef{gen, sign > 0 ? 'S' : 'R'};
}

ProjMap word_map(const SchottkyData& s, const ReducedWord& w) {
    ProjMap m = ProjMap::identity(s.n);
    for (const auto& [gen, sign] : w.letters()) {
        if (gen > s.genus()) throw DimensionMismatchError("word uses a generator the data does not have");
        const ProjMap& base = s.generators[static_cast<size_t>(gen - 1)];
        m = m * (sign > 0 ? base : base.inverse());
    }
    return m;
}

const QuadricRegion& region_of(const SchottkyData& s, const RegionRef& ref) {
    const auto& pair = s.regions.at(static_cast<size_t>(ref.gen - 1));
    return ref.side == 'R' ? pair.first : pair.second;
}

std::vector<ReducedWord> enumerate_reduced_words(int g, int max_len) {
    std::vector<ReducedWord> out;
    out.push_back(ReducedWord::identity());
    std::vector<ReducedWord::Letter> current;

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) >= max_len) return;
        for (int gen = 1; gen <= g; ++gen) {
            for (int sign : {+1, -1}) {
                if (!current.empty() && current.back().first == gen && current.back().second != sign)
                    continue;  // would cancel
                current.emplace_back(gen, sign);
                out.push_back(ReducedWord::from_letters(current));
                self(self);
                current.pop_back();
            }
        }
    };
    if (max_len > 0) rec(rec);
    return out;
}

std::vector<QuadricRegion> nested_region(const SchottkyData& s, int gen, char side, int depth) {
    const auto& pair = s.regions.at(static_cast<size_t>(gen - 1));
    const ProjMap& gamma = s.generators.at(static_cast<size_t>(gen - 1));
    const ProjMap step = side == 'S' ? gamma : gamma.inverse();
    std::vector<QuadricRegion> chain;
    chain.push_back(side == 'S' ? pair.second : pair.first);
    for (int k = 1; k <= depth; ++k) chain.push_back(region_image(chain.back(), step));
    return chain;
}

AccumulationEstimate accumulation_estimate(const SchottkyData& s, int gen,
                                           const std::vector<ProjPoint>& p_set, int m_max,
                                           int direction) {
    for (const auto& p : p_set)
        if (fundamental_domain_membership(s, p).kind != DomainLocation::Kind::InteriorF)
            throw PointNotInDomainError();

    const ProjMap& gamma = s.generators.at(static_cast<size_t>(gen - 1));
    const ProjMap step = direction >= 0 ? gamma : gamma.inverse();

    AccumulationEstimate est;
    est.chain_depth = m_max / 2;

    std::vector<ProjPoint> tail;
    for (const auto& p : p_set) {
        PowerIterator it(step.lift(), p.coords());
        for (int m = 1; m <= m_max; ++m) {
            it.step();
            if (m > m_max / 2) tail.push_back(canonicalize(it.w));
        }
    }
    // greedy clustering of the tail at fs 1e-5; clusters with >= 5 hits count
    std::vector<ProjPoint> reps;
    std::vector<int> hits;
    for (const auto& q : tail) {
        bool placed = false;
        for (size_t i = 0; i < reps.size(); ++i) {
            if (fs_distance(reps[i], q) <= 1e-5) {
                ++hits[i];
                placed = true;
                break;
            }
        }
        if (!placed) {
            reps.push_back(q);
            hits.push_back(1);
        }
    }
    const auto chain = nested_region(s, gen, direction >= 0 ? 'S' : 'R', est.chain_depth);
    est.all_in_chain = true;
    for (size_t i = 0; i < reps.size(); ++i) {
        if (hits[i] < 5) continue;
        est.cluster_points.push_back(reps[i]);
        est.hits.push_back(hits[i]);
        if (chain.back().eval(reps[i]) >= 0.0) est.all_in_chain = false;
    }
    return est;
}

}  // namespace schottky
