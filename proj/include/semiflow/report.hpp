#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semiflow {

/// Shortest text that round-trips a double: 17 significant digits.
std::string format_g17(double x);

/// Streaming JSON builder. Key order is insertion order and numbers are
/// emitted with format_g17, so equal inputs serialize to equal bytes; this
/// is what the reproducibility contract of the reports rests on.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double x);
    JsonWriter& value(int64_t x);
    JsonWriter& value(uint64_t x);
    JsonWriter& value(int x) { return value(static_cast<int64_t>(x)); }
    JsonWriter& value(bool b);
    JsonWriter& value(const char* s);
    JsonWriter& value(const std::string& s);
    JsonWriter& value_complex(double re, double im);  // {"re": ..., "im": ...}
    JsonWriter& null_value();

    /// The finished document. Fails if objects/arrays are still open.
    std::string str() const;

  private:
    void prefix();
    void indent();
    std::string out_;
    std::vector<char> stack_;  // '{' or '['
    bool need_comma_ = false;
    bool after_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace semiflow
