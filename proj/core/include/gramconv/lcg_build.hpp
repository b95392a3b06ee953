#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gramconv/fingerprint.hpp"
#include "gramconv/lcg.hpp"
#include "gramconv/slp.hpp"

namespace gramconv {

/// l_k = (4/3)^a with a = ceil(k/2) - 1.
struct LevelThreshold {
    std::uint32_t exponent = 0;
    /// Largest integer length <= l_k (saturates far above any text length).
    std::uint64_t max_length = 1;

    bool admits(std::uint64_t length) const noexcept { return length <= max_length; }
    /// Exact 4^a and 3^a; only for exponent <= 63.
    uint128 numerator() const;
    uint128 denominator() const;
};

/// Requires k >= 1.
LevelThreshold level_threshold(std::uint32_t k);

/// len * 3^a <= 4^a, evaluated exactly.
bool fits_threshold(std::uint64_t length, std::uint32_t exponent);

/// Order-statistic AVL tree over symbols; the inorder position of a symbol
/// is its rank pi(symbol). New symbols go to a uniformly random rank in
/// [1, size + 1], so existing relative order never changes.
class PermutationOracle {
public:
    explicit PermutationOracle(std::uint64_t seed) : rng_(seed) {}

    /// Inserts `s` if absent. Returns true when it was new.
    bool insert(SymbolId s);
    bool contains(SymbolId s) const { return id_.count(s) != 0; }
    /// 1-based rank; `s` must be present.
    std::uint64_t rank(SymbolId s) const;
    std::size_t size() const noexcept { return id_.size(); }

    /// Inserts at an explicit rank in [1, size + 1] (tests use this).
    void insert_at(SymbolId s, std::uint64_t rank);

    /// Height check for tests: AVL balance and size fields hold everywhere.
    bool check_invariants() const;

private:
    struct Node {
        SymbolId symbol;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::int32_t parent = -1;
        std::int32_t height = 1;
        std::uint32_t size = 1;
    };

    std::int32_t insert_rec(std::int32_t v, std::uint64_t rank, std::int32_t fresh);
    std::int32_t rebalance(std::int32_t v);
    std::int32_t rotate_left(std::int32_t v);
    std::int32_t rotate_right(std::int32_t v);
    void pull(std::int32_t v);
    std::int32_t height(std::int32_t v) const { return v < 0 ? 0 : nodes_[v].height; }
    std::uint32_t size_of(std::int32_t v) const { return v < 0 ? 0 : nodes_[v].size; }
    std::uint64_t uniform(std::uint64_t bound);  // uniform in [0, bound)

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    std::unordered_map<SymbolId, std::int32_t> id_;
    std::mt19937_64 rng_;
};

/// Hooks into the level cascade. Level 0 is the input stream.
class LevelObserver {
public:
    virtual ~LevelObserver() = default;
    /// Symbol emitted by `level` (in text order), with its expansion length.
    virtual void on_emit(std::uint32_t level, SymbolId symbol, std::uint64_t exp_len) {
        (void)level, (void)symbol, (void)exp_len;
    }
    /// Symbol inserted into the permutation trees of even `level` at `rank`
    /// (1-based, ranks of later symbols shift).
    virtual void on_tree_insert(std::uint32_t level, SymbolId symbol, std::uint64_t rank) {
        (void)level, (void)symbol, (void)rank;
    }
};

struct LcgBuildOptions {
    LevelObserver* observer = nullptr;
    /// Abort when the nonterminal count exceeds this.
    std::optional<std::uint64_t> rule_budget;
};

struct LcgBuildStats {
    std::uint32_t levels = 0;              // levels until a single symbol remains
    std::vector<std::uint64_t> level_sizes;  // |S_k| for k = 0..levels
    std::uint64_t rules = 0;
    unsigned restarts = 0;
    std::vector<std::uint64_t> aborted_sizes;  // rule counts at each abort
};

/// Raised inside a build when the rule budget is exceeded.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::uint64_t rules)
        : std::runtime_error("rule budget exceeded at " + std::to_string(rules) + " rules"), rules_(rules) {}
    std::uint64_t rules() const noexcept { return rules_; }

private:
    std::uint64_t rules_;
};

/// Hard cap on the level count for a text of length n.
std::uint32_t level_cap(std::uint64_t n);

/// Streaming builder: push terminal ids (indices into `terminal_bytes`)
/// left to right, then finish().
class LcgBuilder {
public:
    LcgBuilder(std::vector<std::uint8_t> terminal_bytes, std::uint64_t n, std::uint64_t seed, LcgBuildOptions options = {});
    ~LcgBuilder();
    LcgBuilder(const LcgBuilder&) = delete;
    LcgBuilder& operator=(const LcgBuilder&) = delete;

    void push(SymbolId terminal);
    Rlcfg finish(LcgBuildStats* stats = nullptr);

private:
    class Level;
    class OddLevel;
    class EvenLevel;
    friend class Level;
    friend class OddLevel;
    friend class EvenLevel;

    void emit(std::uint32_t level, SymbolId symbol);
    SymbolId add_run(std::uint32_t level, SymbolId child, std::uint64_t count);
    SymbolId add_block(std::uint32_t level, const std::vector<SymbolId>& children);
    void count_rule();

    Rlcfg lcg_;
    std::vector<std::uint64_t> exp_len_;
    std::uint64_t n_;
    std::uint64_t pushed_ = 0;
    std::uint64_t seed_;
    LcgBuildOptions options_;
    std::uint32_t cap_;
    std::vector<std::unique_ptr<Level>> levels_;  // levels_[k - 1] is level k
    std::vector<std::uint64_t> emitted_;          // emitted_[k] = |S_k|
    std::vector<SymbolId> last_emitted_;
    bool finished_ = false;
};

/// One pass over exp(slp). The SLP alphabet is kept.
Rlcfg build_lcg(const Slp& slp, std::uint64_t seed, LcgBuildStats* stats = nullptr, LcgBuildOptions options = {});
/// From raw text; the alphabet is the sorted set of bytes in the text.
Rlcfg build_lcg(std::string_view text, std::uint64_t seed, LcgBuildStats* stats = nullptr, LcgBuildOptions options = {});

inline constexpr double kDefaultBudgetConstant = 64.0;
inline constexpr unsigned kMaxBudgetRestarts = 16;

/// c * delta * log2(max(n / delta, 2)).
double size_budget(std::uint64_t n, double delta, double c = kDefaultBudgetConstant);

/// Restarts with fresh seeds while the rule count exceeds size_budget.
/// Throws std::runtime_error listing the observed sizes after
/// kMaxBudgetRestarts restarts.
Rlcfg build_lcg_with_budget(const Slp& slp, std::uint64_t seed, double delta, double c = kDefaultBudgetConstant,
                            LcgBuildStats* stats = nullptr);
Rlcfg build_lcg_with_budget(std::string_view text, std::uint64_t seed, double delta,
                            double c = kDefaultBudgetConstant, LcgBuildStats* stats = nullptr);

/// Binary SLP with the same expansion: runs become doubling chains, blocks
/// left-leaning chains; equal pairs share a rule.
Slp binarize(const Rlcfg& lcg);

/// build_lcg on raw text followed by binarize.
Slp build_slp_from_text(std::string_view text, std::uint64_t seed = 0);

}  // namespace gramconv
