#include "gramconv/lcg_build.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "gramconv/errors.hpp"
#include "gramconv/seed.hpp"

namespace gramconv {

bool fits_threshold(std::uint64_t length, std::uint32_t exponent) {
    if (exponent == 0) return length <= 1;
    if (exponent >= 155) return true;  // (4/3)^155 > 2^64
    // length * 3^a as little-endian 32-bit limbs, then compare with 2^(2a).
    std::vector<std::uint32_t> limbs{static_cast<std::uint32_t>(length), static_cast<std::uint32_t>(length >> 32)};
    for (std::uint32_t t = 0; t < exponent; ++t) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs) {
            const std::uint64_t v = std::uint64_t{limb} * 3 + carry;
            limb = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        if (carry) limbs.push_back(static_cast<std::uint32_t>(carry));
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    if (limbs.empty()) return true;
    const std::uint64_t bits = 32 * (limbs.size() - 1) + (32 - static_cast<std::uint64_t>(__builtin_clz(limbs.back())));
    // Equality with 4^a is impossible for a >= 1 (3 does not divide 4^a).
    return bits <= 2 * std::uint64_t{exponent};
}

LevelThreshold level_threshold(std::uint32_t k) {
    if (k == 0) throw InvalidArgument("level must be at least 1");
    LevelThreshold t;
    t.exponent = (k + 1) / 2 - 1;
    std::uint64_t lo = 1;  // fits
    std::uint64_t hi = UINT64_MAX;
    if (fits_threshold(hi, t.exponent)) {
        lo = hi;
    } else {
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            (fits_threshold(mid, t.exponent) ? lo : hi) = mid;
        }
    }
    t.max_length = lo;
    return t;
}

uint128 LevelThreshold::numerator() const {
    if (exponent > 63) throw InvalidArgument("threshold numerator overflows 128 bits");
    return static_cast<uint128>(1) << (2 * exponent);
}

uint128 LevelThreshold::denominator() const {
    if (exponent > 63) throw InvalidArgument("threshold denominator overflows 128 bits");
    uint128 d = 1;
    for (std::uint32_t t = 0; t < exponent; ++t) d *= 3;
    return d;
}

std::uint32_t level_cap(std::uint64_t n) {
    const double lg = n <= 1 ? 0.0 : std::log2(static_cast<double>(n));
    return static_cast<std::uint32_t>(std::ceil(8.0 * lg)) + 16;
}

// ---- PermutationOracle ----

std::uint64_t PermutationOracle::uniform(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng_();
    } while (v >= limit);
    return v % bound;
}

bool PermutationOracle::insert(SymbolId s) {
    if (contains(s)) return false;
    insert_at(s, 1 + uniform(size() + 1));
    return true;
}

void PermutationOracle::insert_at(SymbolId s, std::uint64_t rank) {
    if (contains(s)) throw InvalidArgument("symbol already ranked");
    if (rank == 0 || rank > size() + 1) throw InvalidArgument("insertion rank out of range");
    const auto fresh = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({s});
    id_.emplace(s, fresh);
    root_ = insert_rec(root_, rank, fresh);
    nodes_[root_].parent = -1;
}

std::uint64_t PermutationOracle::rank(SymbolId s) const {
    std::int32_t x = id_.at(s);
    std::uint64_t r = size_of(nodes_[x].left) + 1;
    for (std::int32_t p = nodes_[x].parent; p >= 0; x = p, p = nodes_[p].parent) {
        if (nodes_[p].right == x) r += size_of(nodes_[p].left) + 1;
    }
    return r;
}

void PermutationOracle::pull(std::int32_t v) {
    Node& n = nodes_[v];
    n.height = 1 + std::max(height(n.left), height(n.right));
    n.size = 1 + size_of(n.left) + size_of(n.right);
}

std::int32_t PermutationOracle::rotate_right(std::int32_t v) {
    const std::int32_t l = nodes_[v].left;
    nodes_[v].left = nodes_[l].right;
    if (nodes_[v].left >= 0) nodes_[nodes_[v].left].parent = v;
    nodes_[l].right = v;
    nodes_[l].parent = nodes_[v].parent;
    nodes_[v].parent = l;
    pull(v);
    pull(l);
    return l;
}

std::int32_t PermutationOracle::rotate_left(std::int32_t v) {
    const std::int32_t r = nodes_[v].right;
    nodes_[v].right = nodes_[r].left;
    if (nodes_[v].right >= 0) nodes_[nodes_[v].right].parent = v;
    nodes_[r].left = v;
    nodes_[r].parent = nodes_[v].parent;
    nodes_[v].parent = r;
    pull(v);
    pull(r);
    return r;
}

std::int32_t PermutationOracle::rebalance(std::int32_t v) {
    const std::int32_t bal = height(nodes_[v].left) - height(nodes_[v].right);
    if (bal > 1) {
        const std::int32_t l = nodes_[v].left;
        if (height(nodes_[l].left) < height(nodes_[l].right)) {
            nodes_[v].left = rotate_left(l);
        }
        return rotate_right(v);
    }
    if (bal < -1) {
        const std::int32_t r = nodes_[v].right;
        if (height(nodes_[r].right) < height(nodes_[r].left)) {
            nodes_[v].right = rotate_right(r);
        }
        return rotate_left(v);
    }
    return v;
}

std::int32_t PermutationOracle::insert_rec(std::int32_t v, std::uint64_t rank, std::int32_t fresh) {
    if (v < 0) return fresh;
    const std::uint64_t left_size = size_of(nodes_[v].left);
    if (rank <= left_size + 1) {
        const std::int32_t c = insert_rec(nodes_[v].left, rank, fresh);
        nodes_[v].left = c;
        nodes_[c].parent = v;
    } else {
        const std::int32_t c = insert_rec(nodes_[v].right, rank - left_size - 1, fresh);
        nodes_[v].right = c;
        nodes_[c].parent = v;
    }
    pull(v);
    return rebalance(v);
}

bool PermutationOracle::check_invariants() const {
    struct Checker {
        const PermutationOracle& t;
        bool ok = true;
        std::int32_t visit(std::int32_t v, std::int32_t parent, std::uint32_t& size) {
            if (v < 0) {
                size = 0;
                return 0;
            }
            const Node& n = t.nodes_[v];
            if (n.parent != parent) ok = false;
            std::uint32_t ls = 0;
            std::uint32_t rs = 0;
            const std::int32_t lh = visit(n.left, v, ls);
            const std::int32_t rh = visit(n.right, v, rs);
            if (std::abs(lh - rh) > 1 || n.height != 1 + std::max(lh, rh) || n.size != 1 + ls + rs) ok = false;
            size = n.size;
            return n.height;
        }
    } checker{*this};
    std::uint32_t total = 0;
    checker.visit(root_, -1, total);
    return checker.ok && total == id_.size();
}

// ---- level processors ----

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<SymbolId, std::uint64_t>& p) const noexcept {
        return static_cast<std::size_t>(mix64(p.first ^ mix64(p.second)));
    }
};

struct VectorHash {
    std::size_t operator()(const std::vector<SymbolId>& v) const noexcept {
        std::uint64_t h = v.size();
        for (SymbolId s : v) h = mix64(h ^ s);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

class LcgBuilder::Level {
public:
    Level(LcgBuilder& builder, std::uint32_t k) : b_(builder), k_(k), threshold_(level_threshold(k)) {}
    virtual ~Level() = default;
    virtual void push(SymbolId s) = 0;
    virtual void flush() = 0;

protected:
    bool light(SymbolId s) const { return threshold_.admits(b_.exp_len_[s]); }

    LcgBuilder& b_;
    std::uint32_t k_;
    LevelThreshold threshold_;
};

class LcgBuilder::OddLevel final : public LcgBuilder::Level {
public:
    using Level::Level;

    void push(SymbolId s) override {
        if (count_ > 0 && s == pending_) {
            ++count_;
            return;
        }
        flush();
        pending_ = s;
        count_ = 1;
    }

    void flush() override {
        if (count_ == 0) return;
        const std::uint64_t c = count_;
        count_ = 0;
        if (c >= 2 && light(pending_)) {
            b_.emit(k_, run_symbol(pending_, c));
            return;
        }
        for (std::uint64_t t = 0; t < c; ++t) b_.emit(k_, pending_);
    }

private:
    SymbolId run_symbol(SymbolId y, std::uint64_t c) {
        auto [it, fresh] = runs_.try_emplace({y, c}, 0);
        if (fresh) it->second = b_.add_run(k_, y, c);
        return it->second;
    }

    SymbolId pending_ = 0;
    std::uint64_t count_ = 0;
    std::unordered_map<std::pair<SymbolId, std::uint64_t>, SymbolId, PairHash> runs_;
};

class LcgBuilder::EvenLevel final : public LcgBuilder::Level {
public:
    EvenLevel(LcgBuilder& builder, std::uint32_t k)
        : Level(builder, k), pi_(derive_seed(builder.seed_, k)) {}

    void push(SymbolId s) override {
        if (!light(s)) {
            flush();
            b_.emit(k_, s);
            segment_ = 0;
            return;
        }
        if (pi_.insert(s) && b_.options_.observer) b_.options_.observer->on_tree_insert(k_, s, pi_.rank(s));
        // prev_ is interior once it has a light left neighbor and s on its right.
        if (segment_ >= 2) {
            const std::uint64_t r = pi_.rank(prev_);
            if (pi_.rank(prev2_) > r && r < pi_.rank(s)) flush();
        }
        block_.push_back(s);
        prev2_ = prev_;
        prev_ = s;
        ++segment_;
    }

    void flush() override {
        if (block_.empty()) return;
        if (block_.size() == 1) {
            b_.emit(k_, block_.front());
        } else {
            auto it = blocks_.find(block_);
            if (it == blocks_.end()) it = blocks_.emplace(block_, b_.add_block(k_, block_)).first;
            b_.emit(k_, it->second);
        }
        block_.clear();
    }

private:
    PermutationOracle pi_;
    std::vector<SymbolId> block_;
    SymbolId prev_ = 0;
    SymbolId prev2_ = 0;
    std::uint64_t segment_ = 0;  // light symbols since the last heavy one
    std::unordered_map<std::vector<SymbolId>, SymbolId, VectorHash> blocks_;
};

LcgBuilder::LcgBuilder(std::vector<std::uint8_t> terminal_bytes, std::uint64_t n, std::uint64_t seed,
                       LcgBuildOptions options)
    : n_(n), seed_(seed), options_(options), cap_(level_cap(n)) {
    if (terminal_bytes.empty()) throw InvalidArgument("alphabet is empty");
    if (n == 0) throw InvalidArgument("text is empty");
    lcg_.terminal_bytes = std::move(terminal_bytes);
    exp_len_.assign(lcg_.sigma(), 1);
    emitted_.push_back(0);
    last_emitted_.push_back(0);
}

LcgBuilder::~LcgBuilder() = default;

void LcgBuilder::push(SymbolId terminal) {
    if (finished_) throw InvalidArgument("builder already finished");
    if (terminal >= lcg_.sigma()) throw InvalidArgument("terminal id out of range");
    if (++pushed_ > n_) throw InvalidArgument("more symbols pushed than announced");
    emit(0, terminal);
}

void LcgBuilder::emit(std::uint32_t level, SymbolId symbol) {
    ++emitted_[level];
    last_emitted_[level] = symbol;
    if (options_.observer) options_.observer->on_emit(level, symbol, exp_len_[symbol]);
    const std::uint32_t next = level + 1;
    if (levels_.size() < next) {
        if (next > cap_ + 1) throw InvariantViolation("level cap " + std::to_string(cap_) + " exceeded");
        if (next % 2 == 1) {
            levels_.push_back(std::make_unique<OddLevel>(*this, next));
        } else {
            levels_.push_back(std::make_unique<EvenLevel>(*this, next));
        }
        emitted_.push_back(0);
        last_emitted_.push_back(0);
    }
    levels_[level]->push(symbol);
}

void LcgBuilder::count_rule() {
    if (options_.rule_budget && lcg_.rules.size() > *options_.rule_budget) throw BudgetExceeded(lcg_.rules.size());
}

SymbolId LcgBuilder::add_run(std::uint32_t level, SymbolId child, std::uint64_t count) {
    const auto id = static_cast<SymbolId>(lcg_.num_symbols());
    lcg_.rules.push_back(LcgRule::run(child, count, level));
    exp_len_.push_back(exp_len_[child] * count);
    count_rule();
    return id;
}

SymbolId LcgBuilder::add_block(std::uint32_t level, const std::vector<SymbolId>& children) {
    const auto id = static_cast<SymbolId>(lcg_.num_symbols());
    std::uint64_t len = 0;
    for (SymbolId c : children) len += exp_len_[c];
    lcg_.rules.push_back(LcgRule::block(children, level));
    exp_len_.push_back(len);
    count_rule();
    return id;
}

Rlcfg LcgBuilder::finish(LcgBuildStats* stats) {
    if (finished_) throw InvalidArgument("builder already finished");
    if (pushed_ != n_) throw InvalidArgument("pushed " + std::to_string(pushed_) + " symbols, announced " + std::to_string(n_));
    finished_ = true;
    std::uint32_t top = 0;
    while (emitted_[top] != 1) {
        ++top;
        if (top > cap_) throw InvariantViolation("level cap " + std::to_string(cap_) + " exceeded");
        levels_[top - 1]->flush();
    }
    lcg_.root = last_emitted_[top];
    if (stats) {
        stats->levels = top;
        stats->level_sizes.assign(emitted_.begin(), emitted_.begin() + top + 1);
        stats->rules = lcg_.rules.size();
    }
    levels_.clear();
    return std::move(lcg_);
}

// ---- drivers ----

namespace {

template <typename Feed>
Rlcfg run_builder(std::vector<std::uint8_t> alphabet, std::uint64_t n, std::uint64_t seed, LcgBuildStats* stats,
                  LcgBuildOptions options, Feed&& feed) {
    LcgBuilder builder(std::move(alphabet), n, seed, options);
    feed(builder);
    return builder.finish(stats);
}

struct TextAlphabet {
    std::vector<std::uint8_t> bytes;
    std::array<SymbolId, 256> id{};
};

TextAlphabet text_alphabet(std::string_view text) {
    std::array<bool, 256> seen{};
    for (char c : text) seen[static_cast<std::uint8_t>(c)] = true;
    TextAlphabet a;
    for (unsigned b = 0; b < 256; ++b) {
        if (!seen[b]) continue;
        a.id[b] = static_cast<SymbolId>(a.bytes.size());
        a.bytes.push_back(static_cast<std::uint8_t>(b));
    }
    return a;
}

template <typename Build>
Rlcfg with_budget(std::uint64_t n, std::uint64_t seed, double delta, double c, LcgBuildStats* stats, Build&& build) {
    if (!(delta > 0)) throw InvalidArgument("delta must be positive");
    LcgBuildOptions options;
    options.rule_budget = static_cast<std::uint64_t>(std::floor(size_budget(n, delta, c)));
    std::vector<std::uint64_t> aborted;
    for (unsigned attempt = 0;; ++attempt) {
        try {
            Rlcfg lcg = build(attempt_seed(seed, attempt), options);
            if (stats) {
                stats->restarts = attempt;
                stats->aborted_sizes = aborted;
            }
            return lcg;
        } catch (const BudgetExceeded& e) {
            aborted.push_back(e.rules());
            if (attempt >= kMaxBudgetRestarts) {
                std::ostringstream msg;
                msg << "rule budget " << *options.rule_budget << " exceeded on " << aborted.size()
                    << " attempts; observed sizes:";
                for (auto s : aborted) msg << ' ' << s;
                throw std::runtime_error(msg.str());
            }
        }
    }
}

}  // namespace

Rlcfg build_lcg(const Slp& slp, std::uint64_t seed, LcgBuildStats* stats, LcgBuildOptions options) {
    const SymbolMeta meta = compute_meta(slp);
    return run_builder(slp.terminal_bytes, meta.exp_len[slp.root], seed, stats, options, [&](LcgBuilder& b) {
        for_each_terminal(slp, [&](SymbolId a) { b.push(a); });
    });
}

Rlcfg build_lcg(std::string_view text, std::uint64_t seed, LcgBuildStats* stats, LcgBuildOptions options) {
    if (text.empty()) throw InvalidArgument("text is empty");
    TextAlphabet alpha = text_alphabet(text);
    return run_builder(std::move(alpha.bytes), text.size(), seed, stats, options, [&](LcgBuilder& b) {
        for (char c : text) b.push(alpha.id[static_cast<std::uint8_t>(c)]);
    });
}

double size_budget(std::uint64_t n, double delta, double c) {
    return c * delta * std::log2(std::max(static_cast<double>(n) / delta, 2.0));
}

Rlcfg build_lcg_with_budget(const Slp& slp, std::uint64_t seed, double delta, double c, LcgBuildStats* stats) {
    const std::uint64_t n = compute_meta(slp).exp_len[slp.root];
    return with_budget(n, seed, delta, c, stats, [&](std::uint64_t s, LcgBuildOptions o) {
        return build_lcg(slp, s, stats, o);
    });
}

Rlcfg build_lcg_with_budget(std::string_view text, std::uint64_t seed, double delta, double c, LcgBuildStats* stats) {
    return with_budget(text.size(), seed, delta, c, stats, [&](std::uint64_t s, LcgBuildOptions o) {
        return build_lcg(text, s, stats, o);
    });
}

Slp binarize(const Rlcfg& lcg) {
    compute_meta(lcg);
    Slp slp;
    slp.terminal_bytes = lcg.terminal_bytes;
    std::unordered_map<std::pair<SymbolId, std::uint64_t>, SymbolId, PairHash> pairs;
    auto pair = [&](SymbolId a, SymbolId b) {
        auto [it, fresh] = pairs.try_emplace({a, b}, 0);
        if (fresh) {
            it->second = static_cast<SymbolId>(slp.num_symbols());
            slp.rules.emplace_back(a, b);
        }
        return it->second;
    };
    std::vector<SymbolId> map(lcg.num_symbols());
    for (SymbolId a = 0; a < lcg.sigma(); ++a) map[a] = a;
    for (std::size_t r = 0; r < lcg.rules.size(); ++r) {
        const LcgRule& rule = lcg.rules[r];
        SymbolId out;
        if (rule.is_run()) {
            SymbolId power = map[rule.children[0]];
            bool have = false;
            SymbolId acc = 0;
            for (std::uint64_t t = rule.count;;) {
                if (t & 1) {
                    acc = have ? pair(acc, power) : power;
                    have = true;
                }
                t >>= 1;
                if (t == 0) break;
                power = pair(power, power);
            }
            out = acc;
        } else {
            out = map[rule.children[0]];
            for (std::size_t q = 1; q < rule.children.size(); ++q) out = pair(out, map[rule.children[q]]);
        }
        map[lcg.sigma() + r] = out;
    }
    slp.root = map[lcg.root];
    return prune_unreachable(slp);
}

Slp build_slp_from_text(std::string_view text, std::uint64_t seed) { return binarize(build_lcg(text, seed)); }

}  // namespace gramconv
