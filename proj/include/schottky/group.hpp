#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schottky/projective.hpp"
#include "schottky/psl.hpp"
#include "schottky/region.hpp"

namespace schottky {

/// A reduced word over g generators: letters (generator index 1..g,
/// sign +-1) stored leftmost-first, i.e. letters.front() acts last.
/// Reduced: no adjacent letter is followed by its inverse.
class ReducedWord {
public:
    using Letter = std::pair<int, int>;

    static ReducedWord identity() { return ReducedWord({}); }
    /// Throws NotReducedError when an adjacent inverse pair occurs.
    static ReducedWord from_letters(std::vector<Letter> letters);

    const std::vector<Letter>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }

    static bool is_reduced(const std::vector<Letter>& letters);
    std::string str() const;  // e.g. "g2^-1 g1"

private:
    explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    std::vector<Letter> letters_;
};

/// Candidate Schottky data: generators gamma_1..gamma_g with their
/// region pairs (R_j, S_j). Definition-level requirements (g >= 2, the
/// axioms) are verified by verify_schottky, never assumed.
struct SchottkyData {
    int n = 0;
    std::vector<ProjMap> generators;
    std::vector<std::pair<QuadricRegion, QuadricRegion>> regions;  // (R_j, S_j)

    int genus() const { return static_cast<int>(generators.size()); }
};

/// Nori-type generators on odd-dimensional P^n, n = 2k+1: each gamma_j
/// scales the L_{g+j} block by lambda with |lambda| = 1/alpha - 1 in a
/// basis adapted to the pair (L_j, L_{g+j}); R_j = {phi_j < alpha} and
/// S_j = {phi_j > 1 - alpha}, the exact gamma_j-image threshold.
///
/// The coordinate-default configuration takes the graph subspaces
/// W_t = {(x, tx)} over the splitting C^{k+1} + C^{k+1}: generator 1
/// gets (W_inf, W_0) and generator j >= 2 gets (W_{j-1}, W_{-1/(j-1)}),
/// orthogonal complementary pairs that are pairwise disjoint.
SchottkyData nori_build(int n, int g, double alpha,
                        const std::vector<ProjSubspace>* subspace_config = nullptr);

enum class CheckStatus { Pass, Fail, Unknown };

struct AxiomCheck {
    std::string name;
    CheckStatus status = CheckStatus::Unknown;
    std::string detail;
    std::optional<ProjPoint> witness;
    std::optional<double> certificate_mu;
    std::optional<double> certificate_margin;
};

struct VerificationReport {
    std::vector<AxiomCheck> checks;
    std::vector<std::string> notes;

    bool all_passed() const;
    bool any_failed() const;
};

/// Checks Definition-level axioms: generator count, each region open
/// and equal to the interior of its closure (indefinite signature),
/// pairwise disjoint closures (certificate or counterexample), and the
/// mapping axiom gamma_j(R_j) = P^n - closure(S_j), exactly via form
/// pairs when proportional, else by two-sided sampled inclusion.
VerificationReport verify_schottky(const SchottkyData& s, int samples = 10000, std::uint64_t seed = 7);

struct DomainLocation {
    enum class Kind { InteriorF, BoundaryF, InRegion } kind = Kind::InteriorF;
    int gen = 0;      // 1-based, valid for InRegion
    char side = 'R';  // 'R' or 'S', valid for InRegion
};

/// F(Gamma) = P^n minus all 2g regions; classification by quadric sign
/// with boundary tolerance 1e-10. Regions are scanned in order R_1,
/// S_1, R_2, S_2, ... and the first containing region is reported.
DomainLocation fundamental_domain_membership(const SchottkyData& s, const ProjPoint& p,
                                             double boundary_tol = tol::boundary);

struct RegionRef {
    int gen = 0;      // 1-based
    char side = 'S';  // 'R' or 'S'
};

/// The region that w(Int F) must land in: S*_{z} for leading exponent
/// +1, R*_{z} for -1, where z is the leftmost letter.
RegionRef word_image_region(const SchottkyData& s, const ReducedWord& w);

/// The projective map of a word (letters compose left to right, the
/// rightmost letter acting first).
ProjMap word_map(const SchottkyData& s, const ReducedWord& w);

const QuadricRegion& region_of(const SchottkyData& s, const RegionRef& ref);

/// All reduced words of length <= max_len over g generators, identity
/// included, in depth-first lexicographic order over the letters
/// (1,+1) < (1,-1) < (2,+1) < ... Count: 1 + sum 2g (2g-1)^(l-1).
std::vector<ReducedWord> enumerate_reduced_words(int g, int max_len);

/// The chain gamma^k(S*) (side 'S') or gamma^-k(R*) (side 'R') for
/// k = 0..depth, computed by exact region images. Each element's
/// closure is contained in its predecessor; the chain approximates the
/// attracting/repelling sets R(gamma), S(gamma) from outside.
std::vector<QuadricRegion> nested_region(const SchottkyData& s, int gen, char side, int depth);

struct AccumulationEstimate {
    std::vector<ProjPoint> cluster_points;
    std::vector<int> hits;
    int chain_depth = 0;
    bool all_in_chain = false;  // every cluster point inside the depth-limited chain
};

/// Cluster points of {gamma_j^(dir*m) p : m <= m_max} over starts in
/// Int(F) (PointNotInDomainError otherwise). A point is a cluster point
/// when >= 5 tail iterates (m > m_max/2) agree within fs 1e-5. Each is
/// checked against the depth-floor(m_max/2) nested chain (S side for
/// forward orbits, R side for backward).
AccumulationEstimate accumulation_estimate(const SchottkyData& s, int gen,
                                           const std::vector<ProjPoint>& p_set, int m_max,
                                           int direction = +1);

}  // namespace schottky
