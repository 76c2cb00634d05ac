#pragma once

#include "skewform/spaces.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

namespace skewform {

/*
 * Plethysm bookkeeping for the exterior algebras of the two-tensor
 * spaces. The decompositions are indexed by strictly decreasing hook
 * sequences; nesting the hooks diagonally produces the partition of the
 * summand. Conventions are pinned by the worked instances in the tests:
 * the minus-variant sequence (4,3,1) nests to rows (5,5,4,2), and with
 * that normalization the symplectic invariant filter is "all rows
 * even", the orthogonal one "all columns even".
 */

enum class HookVariant {
    minus,  // hook with row a+1, column a; entries > 0   (exterior square)
    plus,   // hook with row a+1, column a+2; entries >= 0 (symmetric square)
};

struct HookSequence {
    std::vector<std::size_t> entries;  // strictly decreasing
    HookVariant variant = HookVariant::minus;

    bool valid(std::size_t dim_v) const;
    // Exterior degree of the summand this sequence indexes.
    std::size_t degree() const;
};

struct YoungDiagram {
    std::vector<std::size_t> rows;  // weakly decreasing, positive

    bool valid() const;
    std::size_t boxes() const;
    std::vector<std::size_t> columns() const;  // conjugate row lengths
    bool even_rows() const;
    bool even_columns() const;

    friend bool operator==(const YoungDiagram& a, const YoungDiagram& b) { return a.rows == b.rows; }
    friend bool operator<(const YoungDiagram& a, const YoungDiagram& b) { return a.rows < b.rows; }
};

YoungDiagram nest_hooks(const HookSequence& seq);

struct DiagramWithMult {
    YoungDiagram diagram;
    std::size_t multiplicity;
};

// All diagrams reachable by adding `count` (1 or 2) boxes one at a time,
// keeping every row length <= bound; multiplicity counts ordered paths.
std::vector<DiagramWithMult> pieri_add_boxes(const YoungDiagram& d, std::size_t count,
                                             std::size_t bound);

// Hook variant and invariant filter attached to a family.
HookVariant hook_variant(const Family& family);
bool invariant_admissible(const Family& family, const YoungDiagram& d);

// Visits every admissible hook sequence for the family (all exterior
// degrees); enumeration order is deterministic.
void for_each_sequence(const Family& family, const std::function<void(const HookSequence&)>& fn);

std::size_t invariant_count(const Family& family, std::size_t degree);
std::map<std::size_t, std::size_t> invariant_dims(const Family& family);
std::size_t invariant_total(const Family& family);

// Dimension of the equivariant-map space in each exterior degree,
// counted by two-box Pieri paths into invariant-admissible diagrams.
std::map<std::size_t, std::size_t> covariant_dims(const Family& family);
std::size_t covariant_count(const Family& family);

enum class CountKind { invariants, covariants };

// The closed forms the counts must reproduce. Throws for families
// without one (full, coords).
std::size_t closed_form(const Family& family, CountKind kind);

}  // namespace skewform
