#include "l0fusion/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace l0fusion {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

[[noreturn]] void parse_error(const std::string& path, int row, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(row) + ": " + what);
}

}  // namespace

CsvDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) parse_error(path, 1, "missing header row");
    const auto header = split_csv_line(line);

    int y_col = -1, truth_col = -1;
    std::vector<std::pair<int, int>> x_cols, z_cols;  // (index-in-file, 1-based name index)
    for (size_t c = 0; c < header.size(); ++c) {
        const std::string& h = header[c];
        if (h == "y") y_col = static_cast<int>(c);
        else if (h == "beta_true") truth_col = static_cast<int>(c);
        else if (h.size() > 1 && h[0] == 'x') x_cols.emplace_back(static_cast<int>(c), std::stoi(h.substr(1)));
        else if (h.size() > 1 && h[0] == 'z') z_cols.emplace_back(static_cast<int>(c), std::stoi(h.substr(1)));
        else parse_error(path, 1, "unrecognized column '" + h + "'");
    }
    if (y_col < 0) parse_error(path, 1, "missing column y");
    if (x_cols.empty()) parse_error(path, 1, "no feature columns x1..xp");
    auto by_name_index = [](const auto& a, const auto& b) { return a.second < b.second; };
    std::sort(x_cols.begin(), x_cols.end(), by_name_index);
    std::sort(z_cols.begin(), z_cols.end(), by_name_index);

    std::vector<std::vector<std::string>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            parse_error(path, lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                                          std::to_string(fields.size()));
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) parse_error(path, lineno, "no data rows");

    const int n = static_cast<int>(rows.size());
    const int p = static_cast<int>(x_cols.size());
    const int q = static_cast<int>(z_cols.size());

    CsvDataset out;
    out.data.y.resize(n);
    out.data.X.resize(n, p);
    out.data.Z.resize(n, q);
    auto parse = [&](const std::string& f, int row) {
        try {
            return std::stod(f);
        } catch (const std::exception&) {
            parse_error(path, row, "bad numeric field '" + f + "'");
        }
    };
    for (int i = 0; i < n; ++i) {
        const auto& r = rows[static_cast<size_t>(i)];
        out.data.y[i] = parse(r[static_cast<size_t>(y_col)], i + 2);
        for (int j = 0; j < p; ++j)
            out.data.X(i, j) = parse(r[static_cast<size_t>(x_cols[static_cast<size_t>(j)].first)], i + 2);
        for (int j = 0; j < q; ++j)
            out.data.Z(i, j) = parse(r[static_cast<size_t>(z_cols[static_cast<size_t>(j)].first)], i + 2);
    }
    if (truth_col >= 0) {
        if (n < p) parse_error(path, 1, "beta_true needs at least p rows");
        VectorXd bt(p);
        for (int j = 0; j < p; ++j)
            bt[j] = parse(rows[static_cast<size_t>(j)][static_cast<size_t>(truth_col)], j + 2);
        out.beta_true = bt;
    }
    out.data.validate();
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& data, const VectorXd* beta_true) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "y";
    for (int j = 1; j <= data.p(); ++j) out << ",x" << j;
    for (int j = 1; j <= data.q(); ++j) out << ",z" << j;
    if (beta_true) out << ",beta_true";
    out << "\n";
    for (int i = 0; i < data.n(); ++i) {
        out << csv_field(data.y[i]);
        for (int j = 0; j < data.p(); ++j) out << "," << csv_field(data.X(i, j));
        for (int j = 0; j < data.q(); ++j) out << "," << csv_field(data.Z(i, j));
        if (beta_true) {
            out << ",";
            if (i < data.p()) out << csv_field((*beta_true)[i]);
        }
        out << "\n";
    }
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)), out_(new std::ofstream(path_)) {
    if (!*out_) throw std::runtime_error("cannot open " + path_ + " for writing");
}

CsvWriter::~CsvWriter() { delete out_; }

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        if (i > 0) *out_ << ",";
        if (f.find_first_of(",\"\n") != std::string::npos) {
            *out_ << '"';
            for (char c : f) {
                if (c == '"') *out_ << "\"\"";
                else *out_ << c;
            }
            *out_ << '"';
        } else {
            *out_ << f;
        }
    }
    *out_ << "\n";
    out_->flush();
}

std::string csv_field(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace l0fusion
