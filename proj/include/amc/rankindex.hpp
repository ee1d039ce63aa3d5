#pragma once

// Bounds on delta(X, t), certificates for and against QR(k), and the rank
// index. The positive side collects rank-<=k quadrics (rational ones from the
// harvests, algebraic ones from the rank locus); the negative side looks for
// linear forms in the radical of the (k+1)-minor ideal of M_Q.

#include "amc/locus.hpp"
#include "amc/qmap.hpp"

#include <chrono>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

struct RankBudget {
  HarvestBudget harvest;
  SieveOptions sieve;
  LocusOptions locus;
  bool use_locus = true;
  bool rabinowitsch = true;
  std::size_t max_candidates = 500;
  std::size_t rabinowitsch_pairs = 20000;
  std::size_t rabinowitsch_coeff_bits = 20000;
  /// Wall-clock limit for one delta or certify_qr call; zero is unbounded.
  std::chrono::milliseconds time_limit{0};
  std::string profile = "paper";

  /// "quick", "paper" or "exhaustive".
  static RankBudget named(std::string_view profile);
  /// From AMC_BUDGET_PROFILE, "paper" when unset.
  static RankBudget from_env();
};

struct QRCertificate {
  int k = 0;
  std::string scheme;
  std::vector<Poly> i2_basis;
  std::vector<Poly> quadrics;  // rational, rank <= k
  std::vector<int> ranks;
  std::vector<std::string> sources;
  std::vector<AlgebraicQuadric> algebraic;  // conjugate families of rank <= k
  /// Row i writes i2_basis[i] in the generators: quadrics, then the parts of
  /// each algebraic family in order. Every rational quadric is used.
  RatMatrix basis_matrix;

  std::vector<Poly> generators() const;
};

struct ObstructionWitness {
  enum class Kind { minor, rabinowitsch };
  Kind kind = Kind::minor;
  SieveHit hit;              // minor: the (k+1)-minor and its reduction
  std::size_t gb_pairs = 0;  // rabinowitsch: pairs processed, replayed exactly
};

struct ObstructionCertificate {
  int k = 0;
  std::string scheme;
  std::vector<Poly> i2_basis;
  std::vector<Poly> forms;  // linear forms in a0..at, leading coefficient 1
  std::vector<ObstructionWitness> witnesses;
};

/// Replays without searching. The scheme, when given, must have the same I_2.
bool verify(const QRCertificate& c, const Scheme* scheme = nullptr);
bool verify(const ObstructionCertificate& c, const Scheme* scheme = nullptr);

/// The rank-<=t part found so far: rational items plus algebraic families.
struct PositiveSearch {
  std::vector<HarvestItem> items;
  std::vector<AlgebraicQuadric> algebraic;
  std::size_t span = 0;
  std::size_t dim = 0;
  std::size_t samples = 0;
  bool full() const { return span == dim; }
};

struct NegativeSearch {
  std::vector<Poly> forms;
  std::vector<ObstructionWitness> witnesses;
  bool complete = true;  // false when a cap or cancellation cut it short
};

/// Rational harvest of rank <= k members.
PositiveSearch harvest_search(const Target& target, int k, const RankBudget& budget, std::stop_token stop = {});
/// Adds points of the rank locus, restricted to the zero set of the given
/// forms in the coefficients, until the span reaches dim - #forms.
void extend_with_locus(PositiveSearch& pos, const Target& target, int k, const RankBudget& budget,
                       const std::vector<Poly>& obstruction_forms = {}, std::stop_token stop = {});
PositiveSearch positive_search(const Target& target, int k, const RankBudget& budget, std::stop_token stop = {});
/// Sieve over (k+1)-minors; Rabinowitsch tests on candidates when the sieve
/// finds nothing.
NegativeSearch negative_search(const Target& target, int k, const RankBudget& budget, std::stop_token stop = {});
/// More forms by Rabinowitsch tests on candidates outside the known span. With
/// no candidates given: coefficient variables and sums of known forms.
void extend_with_rabinowitsch(NegativeSearch& neg, const Target& target, int k, const RankBudget& budget,
                              std::stop_token stop = {}, const std::vector<Poly>& candidates = {});
/// Reduced basis of the linear forms in a0..at vanishing on everything found.
std::vector<Poly> annihilator_forms(const Target& target, const PositiveSearch& pos);

struct DeltaBounds {
  int t = 0;
  std::size_t dim = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact() const { return lower == upper; }
  bool capped = false;  // a cap or the time limit cut a search short
  PositiveSearch positive;
  NegativeSearch negative;
};

DeltaBounds delta(const Target& target, int t, const RankBudget& budget = {});

enum class QRStatus { holds, fails, inconclusive };
std::string to_string(QRStatus s);

struct QRDecision {
  int k = 0;
  QRStatus status = QRStatus::inconclusive;
  std::optional<QRCertificate> positive;
  std::optional<ObstructionCertificate> negative;
  std::size_t partial_span = 0, dim = 0, partial_forms = 0;
  bool capped = false;
};

/// Raised when both searches succeed, which would mean a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Runs both searches concurrently; the first decisive one cancels the other.
QRDecision certify_qr(const Target& target, int k, const RankBudget& budget = {});

struct RankIndex {
  int lower = 3;
  std::optional<int> upper;
  std::vector<QRDecision> levels;
  bool exact() const { return upper && *upper == lower; }
};

/// Smallest k with a QR(k) certificate, or the interval left open by
/// inconclusive levels. Starts at k = 3.
RankIndex rank_index(const Target& target, const RankBudget& budget = {});

struct ScanEntry {
  std::string scheme;
  std::string stratum;
  int rnc_rank = 0;
  QRDecision decision;
};

struct ScanReport {
  std::string conjecture;
  std::vector<ScanEntry> entries;
};

/// conjecture "1.2": random centers of rnc_rank >= 4; "1.4": rank-3 centers
/// stratified by how the curve meets its trisecant line.
ScanReport conjecture_scan(std::string_view conjecture, int d_min, int d_max, int samples, std::uint64_t seed,
                           const RankBudget& budget = {});

}  // namespace amc
