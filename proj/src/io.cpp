#include "nls/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nls/common.hpp"

namespace nls {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw DomainError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw DomainError("rename failed: " + path);
}

std::pair<std::string, std::string> split_kv(const std::string& token) {
  auto eq = token.find('=');
  if (eq == std::string::npos || eq == 0)
    throw DomainError("expected key=value, got: " + token);
  return {token.substr(0, eq), token.substr(eq + 1)};
}

std::vector<std::map<std::string, std::string>> read_kv_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open: " + path);
  std::vector<std::map<std::string, std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::map<std::string, std::string> rec;
    std::string tok;
    while (ss >> tok) rec.insert(split_kv(tok));
    if (!rec.empty()) records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace nls
