#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "nlfront/errors.hpp"

namespace nlfront::cli {

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    // binary mode pins the LF line endings the format promises
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("output: cannot write '" + path + "'");
    return out;
}
}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns) {
    if (header.size() != columns.size())
        throw ValidationError("csv: header and column counts differ");
    std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (const auto* col : columns)
        if (col->size() != rows) throw ValidationError("csv: ragged columns");

    std::ofstream out = open_out(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << fmt((*columns[c])[r]);
        out << "\n";
    }
}

void write_trajectory_csv(const std::string& path, const sim::Trajectory& traj) {
    write_csv(path, {"t", "g", "h", "u_center", "v_center"},
              {&traj.times, &traj.g_series, &traj.h_series, &traj.u_center, &traj.v_center});
}

void write_snapshot_csv(const std::string& path, const sim::Snapshot& snap) {
    std::vector<double> ts(snap.x.size(), snap.t);
    write_csv(path, {"t", "x", "u", "v"}, {&ts, &snap.x, &snap.u, &snap.v});
}

void write_state_csv(const std::string& path, const sim::FieldState& state) {
    std::vector<double> xs(state.n());
    for (std::size_t k = 0; k < state.n(); ++k) xs[k] = state.x(k);
    std::vector<double> ts(state.n(), state.t);
    write_csv(path, {"t", "x", "u", "v"}, {&ts, &xs, &state.u, &state.v});
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("input: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TrajectoryData read_trajectory_csv(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    std::size_t lineno = 0;

    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        fields.push_back(cur);
        return fields;
    };

    if (!std::getline(in, line))
        throw ValidationError(path + ":1: empty file, expected a CSV header");
    ++lineno;
    const std::vector<std::string> header = split(line);
    auto col = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    const std::ptrdiff_t ct = col("t"), cg = col("g"), ch = col("h");
    const std::ptrdiff_t cu = col("u_center"), cv = col("v_center");
    if (ct < 0 || ch < 0)
        throw ValidationError(path + ":1: header must contain at least 't' and 'h' columns");

    TrajectoryData data;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line);
        if (fields.size() != header.size())
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        auto value = [&](std::ptrdiff_t c) {
            const std::string& f = fields[static_cast<std::size_t>(c)];
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (end != f.c_str() + f.size() || f.empty())
                throw ValidationError(path + ":" + std::to_string(lineno) +
                                      ": field '" + f + "' is not a number");
            return v;
        };
        data.t.push_back(value(ct));
        data.h.push_back(value(ch));
        if (cg >= 0) data.g.push_back(value(cg));
        if (cu >= 0) data.u_center.push_back(value(cu));
        if (cv >= 0) data.v_center.push_back(value(cv));
    }
    return data;
}

nlohmann::json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

void write_report(const std::string& path, const nlohmann::json& report) {
    std::ofstream out = open_out(path);
    out << report.dump(2) << "\n";
}

namespace {
constexpr int kWidth = 960, kHeight = 600;
constexpr int kLeft = 70, kRight = 930, kTop = 50, kBottom = 550;
const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a8f5d", "#8f6db0", "#c98a2b", "#4b4b4b"};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}
}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<Curve>& curves) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Curve& c : curves) {
        if (c.x.size() != c.y.size()) throw ValidationError("plot: ragged curve data");
        for (double v : c.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : c.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmin <= xmax) || !(ymin <= ymax))
        throw ValidationError("plot: no data points to draw");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    auto X = [&](double v) {
        return kLeft + (v - xmin) / (xmax - xmin) * (kRight - kLeft);
    };
    auto Y = [&](double v) {
        return kBottom - (v - ymin) / (ymax - ymin) * (kBottom - kTop);
    };

    std::ofstream out = open_out(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << (kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"18\">" << title << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << (kRight - kLeft)
        << "\" height=\"" << (kBottom - kTop)
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 5.0;
        const double fy = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << coord(X(fx)) << "\" y1=\"" << kBottom << "\" x2=\""
            << coord(X(fx)) << "\" y2=\"" << (kBottom + 5)
            << "\" stroke=\"#333\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << coord(X(fx)) << "\" y=\"" << (kBottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(fx) << "</text>\n"
            << "<line x1=\"" << (kLeft - 5) << "\" y1=\"" << coord(Y(fy)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << coord(Y(fy)) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << (kLeft - 8) << "\" y=\"" << coord(Y(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(fy) << "</text>\n";
    }
    out << "<text x=\"" << ((kLeft + kRight) / 2) << "\" y=\"" << (kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << xlabel
        << "</text>\n"
        << "<text x=\"18\" y=\"" << ((kTop + kBottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 18 " << ((kTop + kBottom) / 2) << ")\">" << ylabel
        << "</text>\n";

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const Curve& curve = curves[c];
        const char* color = kPalette[c % (sizeof kPalette / sizeof kPalette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curve.x.size(); ++i) {
            if (i) out << " ";
            out << coord(X(curve.x[i])) << "," << coord(Y(curve.y[i]));
        }
        out << "\"/>\n";
        const int ly = kTop + 18 + 18 * static_cast<int>(c);
        out << "<line x1=\"" << (kLeft + 10) << "\" y1=\"" << ly << "\" x2=\"" << (kLeft + 40)
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << (kLeft + 46) << "\" y=\"" << (ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"13\">" << curve.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace nlfront::cli
