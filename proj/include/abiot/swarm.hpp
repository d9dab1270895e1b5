#pragma once

#include <vector>

#include "abiot/field.hpp"
#include "abiot/geometry.hpp"

namespace abiot {

struct CellAssignment {
    int agent_id = 0;
    Rect cell;
    std::vector<int> neighbors;  // agent ids sharing a boundary edge
};

struct BoundaryMsg {
    int from = 0;
    int to = 0;
    Vec2 edge_a;  // claimed edge endpoints, on the sender's cell boundary
    Vec2 edge_b;
    int round = 0;
};

struct PartitionReport {
    double overlap_area_m2 = 0.0;
    double gap_area_m2 = 0.0;
    bool ok = false;
};

struct NegotiationResult {
    std::vector<CellAssignment> assignments;
    std::vector<BoundaryMsg> trace;
    int rounds = 0;
    bool converged = false;
};

// p x q grid of near-equal rectangles, p*q = n_agents and p/q nearest the
// field aspect ratio; boundaries snap to the field grid.
std::vector<CellAssignment> partition_field(const FieldSpec& field, int n_agents);

// Synchronous neighbor-to-neighbor rounds; a disputed strip goes to the lower
// agent_id. Throws NegotiationTimeout when max_rounds passes without a fixed
// point.
NegotiationResult negotiate(std::vector<CellAssignment> assignments, int max_rounds);

// Brute force over the field grid: cell centers in >= 2 assignments count as
// overlap, in 0 as gap.
PartitionReport validate_partition(const std::vector<CellAssignment>& assignments,
                                   const FieldSpec& field);

}  // namespace abiot
