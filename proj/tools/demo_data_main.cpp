// Writes a ready-to-run demo study (grid, weather, loads, generation plan and
// study config) so the gridplan pipeline can be exercised without external
// data.
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "gridplan/tutorial.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gridplan-demo-data: write a bundled demo study directory"};
    std::string name = "five_bus";
    std::string dir = "demo";
    app.add_option("name", name, "five_bus | growth");
    app.add_option("dir", dir, "target directory");
    CLI11_PARSE(app, argc, argv);
    try {
        gridplan::tutorial::write_study(name, dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::printf("demo study '%s' written to %s (run gridplan with --config %s/study.json)\n",
                name.c_str(), dir.c_str(), dir.c_str());
    return 0;
}
