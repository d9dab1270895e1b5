#include "abiot/swarm.hpp"

#include <algorithm>
#include <cmath>

#include "abiot/errors.hpp"

namespace abiot {

namespace {

double snap(double v, double cell) { return std::round(v / cell) * cell; }

// Which side of a does neighbor b sit on? Classified by cell centers so small
// boundary perturbations cannot flip the relation.
enum class Side { Left, Right, Below, Above, None };

Side side_of(const Rect& a, const Rect& b) {
    const double dx = (b.x_lo + b.x_hi) - (a.x_lo + a.x_hi);
    const double dy = (b.y_lo + b.y_hi) - (a.y_lo + a.y_hi);
    if (dx == 0.0 && dy == 0.0) return Side::None;
    if (std::abs(dx) >= std::abs(dy)) return dx < 0.0 ? Side::Left : Side::Right;
    return dy < 0.0 ? Side::Below : Side::Above;
}

}  // namespace

std::vector<CellAssignment> partition_field(const FieldSpec& field, int n_agents) {
    if (n_agents < 1) throw ConfigError("swarm.n_agents must be >= 1");
    if (static_cast<long long>(n_agents) > static_cast<long long>(field.nx) * field.ny)
        throw OverPartitionError("more agents than field grid cells");

    // Pick p columns x q rows with p*q = n and p/q nearest width/length.
    const double aspect = field.width_m / field.length_m;
    int best_p = 1, best_q = n_agents;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= n_agents; ++p) {
        if (n_agents % p != 0) continue;
        const int q = n_agents / p;
        const double cost = std::abs(std::log((static_cast<double>(p) / q) / aspect));
        if (cost < best_cost) {
            best_cost = cost;
            best_p = p;
            best_q = q;
        }
    }
    const int p = best_p, q = best_q;
    if (p > field.nx || q > field.ny)
        throw OverPartitionError("partition cells would be thinner than the field grid");

    std::vector<double> xs(p + 1), ys(q + 1);
    for (int i = 0; i <= p; ++i) xs[i] = snap(field.width_m * i / p, field.cell_size_m);
    for (int j = 0; j <= q; ++j) ys[j] = snap(field.length_m * j / q, field.cell_size_m);
    xs[p] = field.width_m;
    ys[q] = field.length_m;
    for (int i = 0; i < p; ++i)
        if (xs[i + 1] <= xs[i]) throw OverPartitionError("partition column collapsed to zero width");
    for (int j = 0; j < q; ++j)
        if (ys[j + 1] <= ys[j]) throw OverPartitionError("partition row collapsed to zero height");

    std::vector<CellAssignment> out;
    out.reserve(n_agents);
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < p; ++i) {
            CellAssignment a;
            a.agent_id = j * p + i;
            a.cell = {xs[i], ys[j], xs[i + 1], ys[j + 1]};
            if (i > 0) a.neighbors.push_back(j * p + i - 1);
            if (i < p - 1) a.neighbors.push_back(j * p + i + 1);
            if (j > 0) a.neighbors.push_back((j - 1) * p + i);
            if (j < q - 1) a.neighbors.push_back((j + 1) * p + i);
            std::sort(a.neighbors.begin(), a.neighbors.end());
            out.push_back(a);
        }
    }
    return out;
}

NegotiationResult negotiate(std::vector<CellAssignment> assignments, int max_rounds) {
    NegotiationResult res;
    std::sort(assignments.begin(), assignments.end(),
              [](const CellAssignment& a, const CellAssignment& b) {
                  return a.agent_id < b.agent_id;
              });

    for (int round = 1; round <= max_rounds; ++round) {
        // Everyone announces the edge facing each neighbor.
        std::vector<BoundaryMsg> inbox;
        for (const auto& a : assignments) {
            for (int nb_id : a.neighbors) {
                const auto& nb = assignments[static_cast<size_t>(nb_id)];
                BoundaryMsg m;
                m.from = a.agent_id;
                m.to = nb_id;
                m.round = round;
                switch (side_of(a.cell, nb.cell)) {
                    case Side::Left:
                        m.edge_a = {a.cell.x_lo, a.cell.y_lo};
                        m.edge_b = {a.cell.x_lo, a.cell.y_hi};
                        break;
                    case Side::Right:
                        m.edge_a = {a.cell.x_hi, a.cell.y_lo};
                        m.edge_b = {a.cell.x_hi, a.cell.y_hi};
                        break;
                    case Side::Below:
                        m.edge_a = {a.cell.x_lo, a.cell.y_lo};
                        m.edge_b = {a.cell.x_hi, a.cell.y_lo};
                        break;
                    case Side::Above:
                        m.edge_a = {a.cell.x_lo, a.cell.y_hi};
                        m.edge_b = {a.cell.x_hi, a.cell.y_hi};
                        break;
                    case Side::None:
                        m.edge_a = {a.cell.x_lo, a.cell.y_lo};
                        m.edge_b = {a.cell.x_lo, a.cell.y_lo};
                        break;
                }
                inbox.push_back(m);
                res.trace.push_back(m);
            }
        }

        // Apply: the higher id adopts the lower id's claimed edge, so a
        // disputed strip always stays with the lower id (a vacant strip is
        // annexed by the higher id, closing it).
        int changes = 0;
        for (const auto& m : inbox) {
            if (m.from >= m.to) continue;  // only the lower id's claim binds
            auto& mine = assignments[static_cast<size_t>(m.to)].cell;
            const auto& theirs = assignments[static_cast<size_t>(m.from)].cell;
            const double eps = 1e-9;
            switch (side_of(mine, theirs)) {
                case Side::Left:
                    if (std::abs(mine.x_lo - m.edge_a.x) > eps) {
                        mine.x_lo = m.edge_a.x;
                        ++changes;
                    }
                    break;
                case Side::Right:
                    if (std::abs(mine.x_hi - m.edge_a.x) > eps) {
                        mine.x_hi = m.edge_a.x;
                        ++changes;
                    }
                    break;
                case Side::Below:
                    if (std::abs(mine.y_lo - m.edge_a.y) > eps) {
                        mine.y_lo = m.edge_a.y;
                        ++changes;
                    }
                    break;
                case Side::Above:
                    if (std::abs(mine.y_hi - m.edge_a.y) > eps) {
                        mine.y_hi = m.edge_a.y;
                        ++changes;
                    }
                    break;
                case Side::None:
                    break;
            }
        }
        res.rounds = round;
        if (changes == 0) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged)
        throw NegotiationTimeout("no fixed point within max_rounds");
    res.assignments = std::move(assignments);
    return res;
}

PartitionReport validate_partition(const std::vector<CellAssignment>& assignments,
                                   const FieldSpec& field) {
    PartitionReport rep;
    const double cell_area = field.cell_size_m * field.cell_size_m;
    for (int iy = 0; iy < field.ny; ++iy) {
        for (int ix = 0; ix < field.nx; ++ix) {
            const Vec2 c = field.cell_center(ix, iy);
            int hits = 0;
            for (const auto& a : assignments)
                if (a.cell.contains(c)) ++hits;
            if (hits == 0) rep.gap_area_m2 += cell_area;
            if (hits >= 2) rep.overlap_area_m2 += cell_area;
        }
    }
    rep.ok = rep.overlap_area_m2 <= cell_area && rep.gap_area_m2 <= cell_area;
    return rep;
}

}  // namespace abiot
