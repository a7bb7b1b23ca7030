#include "gwsym/hurwitz.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gwsym {

int partition_size(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0);
}

bool is_partition(const Partition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i && p[i] > p[i - 1]) return false;
    }
    return true;
}

Partition sorted_partition(std::vector<int> parts) {
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

std::vector<Partition> partitions_of(int d) {
    std::vector<Partition> out;
    Partition cur;
    // descending parts, largest first
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    std::sort(out.begin(), out.end());  // (1^d) first, (d) last
    return out;
}

Integer centralizer_order(const Partition& p) {
    Integer z = 1;
    int prev = -1, mult = 0;
    for (int part : p) {
        if (part == prev)
            ++mult;
        else {
            prev = part;
            mult = 1;
        }
        z *= Integer(part) * mult;
    }
    return z;
}

Integer class_size(const Partition& p) {
    if (!is_partition(p)) throw std::invalid_argument("class_size: not a partition");
    return factorial(partition_size(p)) / centralizer_order(p);
}

namespace {

// Beta-number form of a partition with a fixed number of rows.
std::vector<int> beta_set(const Partition& p, int rows) {
    std::vector<int> b(rows);
    for (int i = 0; i < rows; ++i) {
        int part = i < static_cast<int>(p.size()) ? p[i] : 0;
        b[i] = part + (rows - 1 - i);
    }
    std::sort(b.begin(), b.end());
    return b;
}

Partition partition_from_beta(std::vector<int> b) {
    std::sort(b.rbegin(), b.rend());
    Partition p;
    int rows = static_cast<int>(b.size());
    for (int i = 0; i < rows; ++i) {
        int part = b[i] - (rows - 1 - i);
        if (part > 0) p.push_back(part);
    }
    return p;
}

struct MNKey {
    Partition shape;
    Partition class_suffix;
    bool operator<(const MNKey& o) const {
        return std::tie(shape, class_suffix) < std::tie(o.shape, o.class_suffix);
    }
};

Integer mn_character(const Partition& shape, const Partition& cls, int idx,
                     std::map<MNKey, Integer>& memo) {
    if (idx == static_cast<int>(cls.size())) return shape.empty() ? 1 : 0;
    MNKey key{shape, Partition(cls.begin() + idx, cls.end())};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int s = cls[idx];
    int rows = static_cast<int>(shape.size());
    auto b = beta_set(shape, rows);
    std::set<int> bset(b.begin(), b.end());
    Integer total = 0;
    for (int x : b) {
        if (x < s || bset.count(x - s)) continue;
        int crossings = 0;
        for (int y : b)
            if (y > x - s && y < x) ++crossings;
        std::vector<int> nb;
        for (int y : b)
            if (y != x) nb.push_back(y);
        nb.push_back(x - s);
        Integer sign = (crossings % 2) ? -1 : 1;
        total += sign * mn_character(partition_from_beta(nb), cls, idx + 1, memo);
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

int CharacterTable::index_of(const Partition& p) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), p);
    if (it == labels.end() || *it != p) return -1;
    return static_cast<int>(it - labels.begin());
}

const CharacterTable& character_table(int d, int cap) {
    if (d < 1 || d > cap) throw std::invalid_argument("character_table: degree cap exceeded");
    static std::map<int, CharacterTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    CharacterTable t;
    t.degree = d;
    t.labels = partitions_of(d);
    int n = static_cast<int>(t.labels.size());
    t.chi.assign(n, std::vector<Integer>(n));
    std::map<MNKey, Integer> memo;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            t.chi[r][c] = mn_character(t.labels[r], t.labels[c], 0, memo);
    return cache.emplace(d, std::move(t)).first->second;
}

namespace {

void check_spec(const TupleSpec& spec) {
    if (spec.degree < 1) throw std::invalid_argument("tuple spec: degree < 1");
    for (const auto& c : spec.classes)
        if (!is_partition(c) || partition_size(c) != spec.degree)
            throw std::invalid_argument("tuple spec: class is not a partition of the degree");
}

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // (a*b)(i) = a[b[i]]
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

Partition cycle_type(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    std::vector<int> cyc;
    for (size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = a[j]) {
            seen[j] = true;
            ++len;
        }
        cyc.push_back(len);
    }
    return sorted_partition(cyc);
}

std::vector<Perm> all_of_class(int d, const Partition& cls) {
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        if (cycle_type(p) == cls) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Perm class_representative(int d, const Partition& cls) {
    Perm p(d);
    int at = 0;
    for (int part : cls) {
        for (int i = 0; i < part; ++i) p[at + i] = at + (i + 1) % part;
        at += part;
    }
    return p;
}

bool transitive(const std::vector<Perm>& gens, int d) {
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : gens)
        for (int i = 0; i < d; ++i) {
            int a = find(i), b = find(g[i]);
            if (a != b) parent[a] = b;
        }
    int root = find(0);
    for (int i = 1; i < d; ++i)
        if (find(i) != root) return false;
    return true;
}

Integer brute_count(const TupleSpec& spec, bool need_transitive) {
    int d = spec.degree;
    int n = static_cast<int>(spec.classes.size());
    if (n == 0) return (!need_transitive || d == 1) ? 1 : 0;

    std::vector<std::vector<Perm>> pool(n);
    for (int i = 1; i + 1 < n; ++i) pool[i] = all_of_class(d, spec.classes[i]);

    // first factor pinned to a representative (the count is conjugation
    // invariant), last factor solved from the product
    Perm first = class_representative(d, spec.classes[0]);
    Integer mult = n >= 2 ? class_size(spec.classes[0]) : 1;

    Integer total = 0;
    std::vector<Perm> chosen(n);
    chosen[0] = first;
    auto rec = [&](auto&& self, int i, const Perm& prefix) -> void {
        if (i == n - 1 || n == 1) {
            Perm last = inverse(prefix);
            if (n >= 2) {
                if (cycle_type(last) != spec.classes[n - 1]) return;
                chosen[n - 1] = last;
            } else if (cycle_type(prefix) != Partition(static_cast<size_t>(d), 1)) {
                return;  // single factor must be the identity
            }
            if (need_transitive && !transitive(chosen, d)) return;
            total += 1;
            return;
        }
        for (const auto& p : pool[i]) {
            chosen[i] = p;
            self(self, i + 1, compose(prefix, p));
        }
    };
    if (n == 1) {
        if (spec.classes[0] == Partition(static_cast<size_t>(d), 1) &&
            (!need_transitive || d == 1))
            total = 1;
    } else {
        rec(rec, 1, first);
    }
    return total * mult;
}

}  // namespace

Integer tuple_count_all(const TupleSpec& spec) {
    check_spec(spec);
    const auto& t = character_table(spec.degree, std::max(spec.degree, kCharacterTableCap));
    int n = static_cast<int>(spec.classes.size());
    int rows = static_cast<int>(t.labels.size());

    Rational sum = 0;
    for (int r = 0; r < rows; ++r) {
        Rational term = 1;
        for (const auto& cls : spec.classes) {
            int c = t.index_of(cls);
            term *= Rational(t.chi[r][c]);
        }
        term /= pow_rational(Rational(t.dim(r)), n - 2);
        sum += term;
    }
    Rational pre = 1;
    for (const auto& cls : spec.classes) pre *= Rational(class_size(cls));
    pre /= Rational(factorial(spec.degree));
    Rational result = pre * sum;
    if (denominator(result) != 1)
        throw std::logic_error("tuple_count_all: character sum is not an integer");
    return numerator(result);
}

std::optional<Integer> tuple_count_all_brute(const TupleSpec& spec, int brute_cap) {
    check_spec(spec);
    if (spec.degree > brute_cap) return std::nullopt;
    return brute_count(spec, false);
}

std::optional<Integer> tuple_count_transitive_brute(const TupleSpec& spec, int brute_cap) {
    check_spec(spec);
    if (spec.degree > brute_cap) return std::nullopt;
    return brute_count(spec, true);
}

namespace {

// All ways to split each class into a sub-partition of m (the block of the
// first point) and the complement; recursion over classes.
void enumerate_splits(const std::vector<Partition>& classes, int idx, int m,
                      std::vector<Partition>& mu, std::vector<Partition>& nu,
                      const std::function<void()>& cb) {
    if (idx == static_cast<int>(classes.size())) {
        cb();
        return;
    }
    const Partition& cls = classes[idx];
    // distinct parts with multiplicities
    std::vector<std::pair<int, int>> runs;
    for (int p : cls) {
        if (!runs.empty() && runs.back().first == p)
            runs.back().second++;
        else
            runs.emplace_back(p, 1);
    }
    std::vector<int> take(runs.size(), 0);
    auto rec = [&](auto&& self, size_t k, int sum) -> void {
        if (sum > m) return;
        if (k == runs.size()) {
            if (sum != m) return;
            Partition a, b;
            for (size_t i = 0; i < runs.size(); ++i) {
                for (int j = 0; j < take[i]; ++j) a.push_back(runs[i].first);
                for (int j = take[i]; j < runs[i].second; ++j) b.push_back(runs[i].first);
            }
            mu[idx] = sorted_partition(a);
            nu[idx] = sorted_partition(b);
            enumerate_splits(classes, idx + 1, m, mu, nu, cb);
            return;
        }
        for (int c = 0; c <= runs[k].second; ++c) {
            take[k] = c;
            self(self, k + 1, sum + c * runs[k].first);
        }
    };
    rec(rec, 0, 0);
}

Integer transitive_fast(const TupleSpec& spec,
                        std::map<std::pair<int, std::vector<Partition>>, Integer>& memo);

Integer all_fast(const TupleSpec& spec) { return tuple_count_all(spec); }

Integer transitive_fast(const TupleSpec& spec,
                        std::map<std::pair<int, std::vector<Partition>>, Integer>& memo) {
    int d = spec.degree;
    auto key = std::make_pair(d, spec.classes);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    // all = sum over block size m of the orbit of point 1:
    //   all(d) = sum_m binom(d-1, m-1) * sum_splits T(mu; m) * all(nu; d-m)
    Integer total = all_fast(spec);
    int n = static_cast<int>(spec.classes.size());
    std::vector<Partition> mu(n), nu(n);
    for (int m = 1; m < d; ++m) {
        Integer sub = 0;
        enumerate_splits(spec.classes, 0, m, mu, nu, [&] {
            TupleSpec ms{m, mu}, ns{d - m, nu};
            sub += transitive_fast(ms, memo) * all_fast(ns);
        });
        total -= binomial(d - 1, m - 1) * sub;
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

Integer tuple_count_transitive(const TupleSpec& spec) {
    check_spec(spec);
    if (spec.classes.empty()) return spec.degree == 1 ? 1 : 0;
    static std::map<std::pair<int, std::vector<Partition>>, Integer> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    return transitive_fast(spec, memo);
}

std::map<std::tuple<Partition, Partition, Partition>, Integer> class_algebra_constants(int d,
                                                                                       int cap) {
    if (d < 1 || d > cap)
        throw std::invalid_argument("class_algebra_constants: degree cap exceeded");
    auto parts = partitions_of(d);
    std::map<Partition, std::vector<Perm>> classes;
    for (const auto& p : parts) classes[p] = all_of_class(d, p);

    std::map<std::tuple<Partition, Partition, Partition>, Integer> out;
    for (const auto& nu : parts) {
        Perm w = class_representative(d, nu);
        for (const auto& lam : parts) {
            std::map<Partition, Integer> tally;
            for (const auto& x : classes[lam]) tally[cycle_type(compose(inverse(x), w))] += 1;
            for (const auto& mu : parts) {
                auto it = tally.find(mu);
                out[{lam, mu, nu}] = it == tally.end() ? Integer(0) : it->second;
            }
        }
    }
    return out;
}

}  // namespace gwsym
