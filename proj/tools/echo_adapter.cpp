// Stand-in for a model process speaking the adapter line protocol. Used by
// the test suites; never part of a real prediction run.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <thread>

using Json = nlohmann::ordered_json;

int main(int argc, char** argv)
{
    CLI::App app{"adapter protocol stub"};
    std::string mode = "echo";
    int sleep_ms = 0;
    int bad_line = 1;
    app.add_option("--mode", mode, "echo | many | garbage | sleep | wrong-id | exit | mixed")
        ->check(CLI::IsMember({"echo", "many", "garbage", "sleep", "wrong-id", "exit", "mixed"}));
    app.add_option("--sleep-ms", sleep_ms, "delay before each response in sleep mode");
    app.add_option("--bad-line", bad_line, "response number that garbage mode corrupts");
    CLI11_PARSE(app, argc, argv);

    if (mode == "exit") {
        return 3;
    }
    std::string line;
    int n = 0;
    while (std::getline(std::cin, line)) {
        ++n;
        Json req;
        try {
            req = Json::parse(line);
        } catch (const Json::parse_error&) {
            std::cout << Json{{"id", nullptr}, {"error", "malformed request"}}.dump() << std::endl;
            continue;
        }
        Json resp;
        resp["id"] = mode == "wrong-id" ? Json("not-" + req.value("id", std::string())) : req["id"];
        Json cands = Json::array();
        if (mode == "many") {
            for (int i = 0; i < 12; ++i) {
                cands.push_back({{"text", "assertEquals(" + std::to_string(i) + ", x);"}, {"score", 1.0 - 0.05 * i}});
            }
        } else if (mode == "mixed") {
            // one well-formed, one unparseable, one with a token no dictionary binds
            cands.push_back({{"text", req.value("truth_hint", std::string("assertTrue(true);"))}, {"score", 0.9}});
            cands.push_back({{"text", "assertEquals(1, "}, {"score", 0.8}});
            cands.push_back({{"text", "ASSERT_0 ( IDENT_999 ) ;"}, {"score", 0.7}});
        } else if (req.contains("truth_hint")) {
            cands.push_back({{"text", req["truth_hint"]}, {"score", 1.0}});
        }
        resp["candidates"] = cands;
        if (mode == "sleep") {
            std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms));
        }
        if (mode == "garbage" && n == bad_line) {
            std::cout << "this is not a record" << std::endl;
        } else {
            std::cout << resp.dump() << std::endl;
        }
    }
    return 0;
}
