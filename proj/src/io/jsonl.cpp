#include "assertgen/io/jsonl.hpp"

#include "assertgen/error.hpp"

#include <fstream>
#include <sstream>

namespace assertgen::io {

void ensure_parent(const std::filesystem::path& path)
{
    auto parent = path.parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) {
            throw Error(ErrorCode::Io, "cannot create " + parent.string() + ": " + ec.message());
        }
    }
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view content)
{
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
}

std::vector<Json> read_jsonl(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::vector<Json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(Json::parse(line));
        } catch (const Json::parse_error& e) {
            throw Error(ErrorCode::MalformedRecord, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records)
{
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    for (const auto& r : records) {
        out << r.dump() << '\n';
    }
    if (!out.flush()) {
        throw Error(ErrorCode::Io, "write failed for " + path.string());
    }
}

void write_json(const std::filesystem::path& path, const Json& value)
{
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    out << value.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
    }
}

}  // namespace assertgen::io
