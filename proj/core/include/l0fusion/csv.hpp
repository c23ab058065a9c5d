#pragma once

#include "l0fusion/params.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace l0fusion {

/// Dataset CSV layout: header row; one column named y; feature columns
/// x1..xp; unpenalized columns z1..zq; optional truth column beta_true
/// (first p rows hold the true coefficients, the rest may be empty).
struct CsvDataset {
    Dataset data;
    std::optional<VectorXd> beta_true;
};

CsvDataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const Dataset& data,
                       const VectorXd* beta_true = nullptr);

/// Minimal RFC-4180-style table writer: header row then one row per record,
/// fields comma-separated, quoted only when needed.
class CsvWriter {
  public:
    explicit CsvWriter(std::string path);
    ~CsvWriter();
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& fields);

  private:
    std::string path_;
    std::ofstream* out_;
};

std::string csv_field(double v);

}  // namespace l0fusion
