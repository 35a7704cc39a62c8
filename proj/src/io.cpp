#include "gibbsgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace gibbsgraph {

namespace {

/// Splits on ',' without trimming: the formats are machine-written and
/// whitespace inside fields is an error worth surfacing.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double_field(const std::string& field, long line_no) {
    double value = 0.0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw FormatError("line " + std::to_string(line_no) + ": bad number '" + field + "'");
    return value;
}

long parse_long_field(const std::string& field, long line_no) {
    long value = 0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw FormatError("line " + std::to_string(line_no) + ": bad integer '" + field + "'");
    return value;
}

/// Reads the next content line (skipping blanks and '#' comments); returns
/// false at EOF.  Tolerates CRLF input by stripping a trailing '\r'.
bool next_content_line(std::istream& in, std::string& line, long& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        return true;
    }
    return false;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[k] = digits[x & 0xf];
        x >>= 4;
    }
    return out;
}

void write_points(std::ostream& out, const PointSet& points,
                  const std::vector<std::string>& comments) {
    for (int k = 0; k < points.dim(); ++k) out << (k ? ",x" : "x") << k;
    out << '\n';
    for (const std::string& c : comments) out << "# " << c << '\n';
    for (int v = 0; v < points.size(); ++v) {
        const auto p = points.point(v);
        for (int k = 0; k < points.dim(); ++k) {
            if (k) out << ',';
            out << format_double(p[k]);
        }
        out << '\n';
    }
}

PointSet read_points(std::istream& in) {
    std::string line;
    long line_no = 0;
    if (!next_content_line(in, line, line_no)) throw FormatError("empty point file");
    const auto header = split_csv(line);
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] != "x" + std::to_string(k))
            throw FormatError("line " + std::to_string(line_no) +
                              ": expected point header 'x0,x1,...', got '" + line + "'");
    const int dim = static_cast<int>(header.size());
    std::vector<double> coords;
    while (next_content_line(in, line, line_no)) {
        const auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != dim)
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(dim) + " coordinates, got " +
                              std::to_string(fields.size()));
        for (const auto& f : fields) coords.push_back(parse_double_field(f, line_no));
    }
    try {
        return PointSet(dim, std::move(coords));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void write_configuration(std::ostream& out, const Configuration& config,
                         const std::vector<std::string>& comments) {
    out << "i,j\n";
    for (const std::string& c : comments) out << "# " << c << '\n';
    for (const EdgeId& e : config.open_edges()) out << e.i << ',' << e.j << '\n';
}

Configuration read_configuration(std::istream& in, int n_vertices) {
    std::string line;
    long line_no = 0;
    if (!next_content_line(in, line, line_no)) throw FormatError("empty configuration file");
    if (line != "i,j")
        throw FormatError("line " + std::to_string(line_no) +
                          ": expected configuration header 'i,j', got '" + line + "'");
    Configuration config(n_vertices);
    while (next_content_line(in, line, line_no)) {
        const auto fields = split_csv(line);
        if (fields.size() != 2)
            throw FormatError("line " + std::to_string(line_no) + ": expected 'i,j' row");
        const long i = parse_long_field(fields[0], line_no);
        const long j = parse_long_field(fields[1], line_no);
        if (i < 0 || j <= i || j >= n_vertices)
            throw FormatError("line " + std::to_string(line_no) + ": edge (" + fields[0] + "," +
                              fields[1] + ") violates 0 <= i < j < " + std::to_string(n_vertices));
        const EdgeId e(static_cast<int>(i), static_cast<int>(j));
        if (config.is_open(e))
            throw FormatError("line " + std::to_string(line_no) + ": duplicate edge");
        config.set_open(e, true);
    }
    return config;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

PointSet read_points_file(const std::string& path) {
    try {
        std::istringstream in(read_text_file(path));
        return read_points(in);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

Configuration read_configuration_file(const std::string& path, int n_vertices) {
    try {
        std::istringstream in(read_text_file(path));
        return read_configuration(in, n_vertices);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

} // namespace gibbsgraph
