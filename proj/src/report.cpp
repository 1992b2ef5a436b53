#include "semiflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace semiflow {

std::string format_g17(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void JsonWriter::indent() {
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::prefix() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (need_comma_) out_ += ',';
    if (!stack_.empty()) indent();
}

JsonWriter& JsonWriter::begin_object() {
    prefix();
    out_ += '{';
    stack_.push_back('{');
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    if (stack_.empty() || stack_.back() != '{')
        throw std::logic_error("JsonWriter: mismatched end_object");
    stack_.pop_back();
    indent();
    out_ += '}';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    prefix();
    out_ += '[';
    stack_.push_back('[');
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    if (stack_.empty() || stack_.back() != '[')
        throw std::logic_error("JsonWriter: mismatched end_array");
    stack_.pop_back();
    indent();
    out_ += ']';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
    if (stack_.empty() || stack_.back() != '{')
        throw std::logic_error("JsonWriter: key outside object");
    if (need_comma_) out_ += ',';
    indent();
    out_ += '"';
    out_ += json_escape(name);
    out_ += "\": ";
    need_comma_ = false;
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double x) {
    prefix();
    out_ += format_g17(x);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(int64_t x) {
    prefix();
    out_ += std::to_string(x);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(uint64_t x) {
    prefix();
    out_ += std::to_string(x);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    prefix();
    out_ += b ? "true" : "false";
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(const std::string& s) {
    prefix();
    out_ += '"';
    out_ += json_escape(s);
    out_ += '"';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value_complex(double re, double im) {
    begin_object();
    key("re").value(re);
    key("im").value(im);
    return end_object();
}

JsonWriter& JsonWriter::null_value() {
    prefix();
    out_ += "null";
    need_comma_ = true;
    return *this;
}

std::string JsonWriter::str() const {
    if (!stack_.empty()) throw std::logic_error("JsonWriter: unclosed scope");
    return out_ + "\n";
}

}  // namespace semiflow
