#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace crawler::cli {

// Column-oriented numeric table written as CSV (',' separator, 15
// significant digits, '\n' line ends).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<Eigen::VectorXd> columns;

  std::string Render() const;
};

struct Series {
  std::string label;
  Eigen::VectorXd y;
  std::string color;
};

// Static polyline chart sharing one x axis.
std::string RenderLineChart(const std::string& title, const std::string& x_label,
                            const Eigen::VectorXd& x, const std::vector<Series>& series);

// Files land under a temporary name and are renamed into place; Discard()
// removes everything committed so far, used when a command fails midway.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path directory);
  ~OutputSet();

  std::filesystem::path Write(const std::string& name, const std::string& content);
  void Keep() { keep_ = true; }
  void Discard();

  const std::vector<std::filesystem::path>& files() const { return files_; }

 private:
  std::filesystem::path directory_;
  std::vector<std::filesystem::path> files_;
  bool keep_ = false;
};

}  // namespace crawler::cli
