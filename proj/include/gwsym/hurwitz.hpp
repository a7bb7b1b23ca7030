#pragma once

#include "gwsym/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gwsym {

// Partition: weakly decreasing positive parts.
using Partition = std::vector<int>;

int partition_size(const Partition& p);
bool is_partition(const Partition& p);
Partition sorted_partition(std::vector<int> parts);  // sorts descending, drops zeros
std::vector<Partition> partitions_of(int d);

// |C_lambda| = d! / z_lambda with z_lambda = prod i^{m_i} m_i!.
Integer centralizer_order(const Partition& p);  // z_lambda
Integer class_size(const Partition& p);

// Exact character table of S_d.  Rows are irreducibles (indexed by the
// partitions_of(d) order), columns are classes in the same order.  Entries by
// the Murnaghan-Nakayama rule over border strips, memoized.
struct CharacterTable {
    int degree;
    std::vector<Partition> labels;           // row/column index -> partition
    std::vector<std::vector<Integer>> chi;   // chi[row][col]
    const Integer& dim(int row) const { return chi[row][0]; }  // column 0 is (1^d)
    int index_of(const Partition& p) const;
};

inline constexpr int kCharacterTableCap = 8;
const CharacterTable& character_table(int d, int cap = kCharacterTableCap);

// Counting tuples (s_1..s_n), s_i in class C_i, with product identity.
struct TupleSpec {
    int degree = 1;
    std::vector<Partition> classes;
};

inline constexpr int kBruteCap = 6;

// Frobenius character-sum count; always available, exact.
Integer tuple_count_all(const TupleSpec& spec);
// Direct enumeration (first factor fixed to a representative, last factor
// solved); empty if the degree exceeds brute_cap.
std::optional<Integer> tuple_count_all_brute(const TupleSpec& spec, int brute_cap = kBruteCap);

// Tuples whose generated group is transitive on {1..d}: fast path by
// inclusion-exclusion over the orbit block of the first point, brute force by
// explicit orbit computation.
Integer tuple_count_transitive(const TupleSpec& spec);
std::optional<Integer> tuple_count_transitive_brute(const TupleSpec& spec,
                                                    int brute_cap = kBruteCap);

// c_{lambda,mu}^{nu}: C_lambda * C_mu = sum_nu c * C_nu in the class algebra,
// by direct convolution.
std::map<std::tuple<Partition, Partition, Partition>, Integer> class_algebra_constants(
    int d, int cap = kCharacterTableCap);

}  // namespace gwsym
