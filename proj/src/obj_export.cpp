#include <devspline/geometry_io.h>

#include <cstdio>
#include <string>
#include <vector>

namespace devspline::io {

namespace {

void append_vertex(std::string& out, const Eigen::Vector3d& p)
{
    char buffer[128];
    // Adding 0.0 turns -0 into 0 so equal geometry prints equal bytes.
    std::snprintf(buffer, sizeof buffer, "v %.9g %.9g %.9g\n", p.x() + 0.0, p.y() + 0.0, p.z() + 0.0);
    out += buffer;
}

void append_face(std::string& out, std::initializer_list<Index> corners)
{
    out += "f";
    for (Index k : corners) out += " " + std::to_string(k);
    out += "\n";
}

} // namespace

std::string export_obj(const RuledPatchd& patch, int u_samples, int v_samples)
{
    if (u_samples < 2 || v_samples < 2) throw ArgumentError("OBJ export needs at least 2x2 samples per piece");
    const auto& knots = patch.knots();
    const double collapse = 1e-9 * patch.scale();

    std::vector<double> us;
    for (Index piece = 0; piece < knots.piece_count(); ++piece) {
        const auto [lo, hi] = knots.piece_interval(piece);
        for (int k = piece == 0 ? 0 : 1; k < u_samples; ++k) {
            us.push_back(k + 1 == u_samples ? hi : lo + (hi - lo) * double(k) / double(u_samples - 1));
        }
    }

    std::string out = "# ruled patch, " + std::to_string(us.size()) + " x " + std::to_string(v_samples) +
                      " samples\n";
    // first vertex index (1-based) of each row and whether the row is a single point
    std::vector<Index> row_start;
    std::vector<bool> row_collapsed;
    Index next = 1;
    for (double u : us) {
        const Eigen::Vector3d c = evaluate(patch.base(), u);
        const Eigen::Vector3d d = evaluate(patch.opposite(), u);
        row_start.push_back(next);
        if ((d - c).norm() < collapse) {
            row_collapsed.push_back(true);
            append_vertex(out, c);
            next += 1;
            continue;
        }
        row_collapsed.push_back(false);
        for (int k = 0; k < v_samples; ++k) {
            const double v = k + 1 == v_samples ? 1.0 : double(k) / double(v_samples - 1);
            append_vertex(out, Eigen::Vector3d((1.0 - v) * c + v * d));
        }
        next += v_samples;
    }

    for (size_t r = 0; r + 1 < us.size(); ++r) {
        const Index a = row_start[r], b = row_start[r + 1];
        if (row_collapsed[r] && row_collapsed[r + 1]) continue;
        for (Index j = 0; j + 1 < v_samples; ++j) {
            if (row_collapsed[r]) {
                append_face(out, {a, b + j, b + j + 1});
            } else if (row_collapsed[r + 1]) {
                append_face(out, {a + j, b, a + j + 1});
            } else {
                append_face(out, {a + j, b + j, b + j + 1, a + j + 1});
            }
        }
    }
    return out;
}

} // namespace devspline::io
