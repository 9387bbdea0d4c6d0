#include "kcomp/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace kcomp {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<double> parse_numbers(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) {
        std::string leftover;
        in.clear();
        in >> leftover;
        throw ParseError(origin + ": not a number: '" + leftover + "'");
    }
    for (double x : out)
        if (!std::isfinite(x)) throw ParseError(origin + ": non-finite value");
    return out;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ParseError(origin + ": expected object with rows, cols, data");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& data = j.at("data");
    if (rows < 1 || cols < 1) throw ParseError(origin + ": bad dimensions");
    if (!data.is_array() || static_cast<int>(data.size()) != rows)
        throw ParseError(origin + ": data does not match declared rows");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = data.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError(origin + ": data row size does not match declared cols");
        for (int jcol = 0; jcol < cols; ++jcol) {
            if (!row.at(jcol).is_number()) throw ParseError(origin + ": non-numeric entry");
            m(i, jcol) = row.at(jcol).get<double>();
        }
    }
    if (!m.all_finite()) throw ParseError(origin + ": non-finite entry");
    return m;
}

}  // namespace

Matrix parse_matrix_text(std::istream& in, const std::string& origin) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw ParseError(origin + ": expected 'rows cols' header");
    if (rows < 1 || cols < 1) throw ParseError(origin + ": bad dimensions");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            double v;
            if (!(in >> v)) throw ParseError(origin + ": matrix data ended early");
            if (!std::isfinite(v)) throw ParseError(origin + ": non-finite entry");
            m(i, j) = v;
        }
    double extra;
    if (in >> extra) throw ParseError(origin + ": trailing data after matrix");
    return m;
}

Matrix read_matrix_file(const std::string& path) {
    const std::string text = read_file(path);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError(path + ": empty file");
    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ": invalid JSON: " + e.what());
        }
        return matrix_from_json(j, path);
    }
    std::istringstream in(text);
    return parse_matrix_text(in, path);
}

std::vector<double> read_vector_file(const std::string& path) {
    const std::vector<double> v = parse_numbers(read_file(path), path);
    if (v.empty()) throw ParseError(path + ": no values");
    return v;
}

void write_matrix_text(const Matrix& m, std::ostream& out) {
    out << m.rows() << ' ' << m.cols() << '\n';
    out.precision(17);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << (m(i, j) == 0.0 ? 0.0 : m(i, j));  // normalize -0
        }
        out << '\n';
    }
}

void write_matrix_file(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_matrix_text(m, out);
}

HopfieldConfig read_hopfield_config(const std::string& path) {
    std::istringstream in(read_file(path));
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            const std::size_t b = s.find_first_not_of(" \t\r");
            const std::size_t e = s.find_last_not_of(" \t\r");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        if (key.empty()) throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }

    const auto require = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(path + ": missing key '" + key + "'");
        return it->second;
    };
    const auto broadcast = [&](const std::string& key, int n, double fallback,
                               bool required) -> std::vector<double> {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            if (required) throw ParseError(path + ": missing key '" + key + "'");
            return std::vector<double>(n, fallback);
        }
        std::vector<double> v = parse_numbers(it->second, path + ": " + key);
        if (v.size() == 1) return std::vector<double>(n, v[0]);
        if (static_cast<int>(v.size()) != n)
            throw ParseError(path + ": " + key + " needs 1 or n values");
        return v;
    };
    const auto rows_of = [&](const std::string& key, const std::string& text,
                             int expected_cols) -> std::vector<std::vector<double>> {
        std::vector<std::vector<double>> rows;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t semi = text.find(';', start);
            const std::string part =
                semi == std::string::npos ? text.substr(start) : text.substr(start, semi - start);
            if (part.find_first_not_of(" \t") != std::string::npos) {
                rows.push_back(parse_numbers(part, path + ": " + key));
                if (expected_cols > 0 && static_cast<int>(rows.back().size()) != expected_cols)
                    throw ParseError(path + ": " + key + " row has wrong length");
            }
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
        return rows;
    };

    HopfieldConfig config;
    const std::vector<double> nval = parse_numbers(require("n"), path + ": n");
    if (nval.size() != 1 || nval[0] != std::floor(nval[0]) || nval[0] < 1)
        throw ParseError(path + ": n must be a positive integer");
    const int n = static_cast<int>(nval[0]);

    HopfieldModel& model = config.model;
    model.n = n;
    model.r = broadcast("r", n, 0.0, true);
    model.u = broadcast("u", n, 0.0, false);
    model.activation.gain = broadcast("activation_gain", n, 1.0, false);
    model.activation.slope = broadcast("activation_slope", n, 1.0, false);

    const std::vector<std::vector<double>> wrows = rows_of("W", require("W"), n);
    if (static_cast<int>(wrows.size()) != n) throw ParseError(path + ": W needs n rows");
    model.w = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) model.w(i, j) = wrows[i][j];

    model.deriv_lower = broadcast("m", n, 0.0, false);
    if (kv.count("M")) {
        model.deriv_upper = broadcast("M", n, 0.0, false);
    } else {
        model.deriv_upper.resize(n);
        for (int i = 0; i < n; ++i)
            model.deriv_upper[i] = std::abs(model.activation.gain[i] * model.activation.slope[i]);
    }
    try {
        model.validate();
    } catch (const std::domain_error& e) {
        throw ParseError(path + ": " + e.what());
    }

    if (kv.count("fixed_initial")) {
        config.fixed_initial = rows_of("fixed_initial", kv.at("fixed_initial"), n);
    }
    return config;
}

std::string file_digest(const std::string& path) {
    const std::string bytes = read_file(path);
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace kcomp
