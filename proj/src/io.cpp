#include "obh/io.hpp"
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace obh {

std::string fmt17(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += char(c);
            }
        }
    }
    return out;
}

void JsonObject::add(const std::string& k, double v) {
    add_raw(k, std::isfinite(v) ? fmt17(v) : "null");
}
void JsonObject::add(const std::string& k, std::int64_t v) { add_raw(k, std::to_string(v)); }
void JsonObject::add(const std::string& k, bool v) { add_raw(k, v ? "true" : "false"); }
void JsonObject::add(const std::string& k, const std::string& v) {
    add_raw(k, "\"" + json_escape(v) + "\"");
}
void JsonObject::add(const std::string& k, const char* v) { add(k, std::string(v)); }
void JsonObject::add(const std::string& k, const JsonObject& v) { add_raw(k, v.str()); }
void JsonObject::add(const std::string& k, const JsonArray& v) { add_raw(k, v.str()); }
void JsonObject::add_raw(const std::string& k, std::string rendered) {
    items.emplace_back(k, std::move(rendered));
}

std::string JsonObject::str() const {
    std::string out = "{";
    const char* sep = "";
    for (const auto& [k, v] : items) {
        out += sep;
        out += "\"" + json_escape(k) + "\":" + v;
        sep = ",";
    }
    out += "}";
    return out;
}

void JsonArray::add(double v) { items.push_back(std::isfinite(v) ? fmt17(v) : "null"); }
void JsonArray::add(const JsonObject& v) { items.push_back(v.str()); }
void JsonArray::add(const std::string& v) { items.push_back("\"" + json_escape(v) + "\""); }

std::string JsonArray::str() const {
    std::string out = "[";
    const char* sep = "";
    for (const auto& v : items) {
        out += sep;
        out += v;
        sep = ",";
    }
    out += "]";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace obh
