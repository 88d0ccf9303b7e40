#pragma once

#include <map>
#include <string>
#include <vector>

namespace nls {

// 12 significant digits, '.' decimal separator, locale independent.
std::string fmt12(double v);

// temp file + rename so readers never see a partial artifact
void atomic_write(const std::string& path, const std::string& content);

// "key=value" token -> pair; throws on malformed tokens
std::pair<std::string, std::string> split_kv(const std::string& token);

// Parse a whitespace-separated key=value file with '#' comments. Each
// non-comment line becomes one record.
std::vector<std::map<std::string, std::string>> read_kv_records(const std::string& path);

}  // namespace nls
