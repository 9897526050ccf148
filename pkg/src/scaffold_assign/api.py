from scaffold_assign.cli.utils_cli import (
    format_solution,
    height_tsv,
    parse_instance,
    rhythm_instance,
    save_height_plot,
)
from scaffold_assign.eval.oracle import DEFAULT_BACKTRACE_GUARD, DEFAULT_GUARD, dp_optimal_assignment, dp_optimal_cost
from scaffold_assign.model import height_profile, instance_from_sorted, make_instance, solve


class LineAssigner:
    def __init__(self, check=False, guard=DEFAULT_GUARD, backtrace_guard=DEFAULT_BACKTRACE_GUARD, presorted=False):
        self.check = check
        self.guard = guard
        self.backtrace_guard = backtrace_guard
        self.presorted = presorted
        self.last_instance = None
        self.last_solution = None

    def instance(self, s, t):
        return make_instance(s, t)

    def load(self, path):
        with open(path, "rb") as f:
            return parse_instance(f.read().decode("utf-8"), presorted=self.presorted, verify=self.check)

    def solve(self, s, t):
        # presorted inputs skip the sort, and are only checked for order when check is on
        if self.presorted:
            inst = instance_from_sorted(s, t, verify=self.check)
        else:
            inst = make_instance(s, t)
        sol = solve(inst, check=self.check)
        self.last_instance, self.last_solution = inst, sol
        return sol

    def cost(self, s, t):
        return self.solve(s, t).total_cost

    def oracle_cost(self, s, t):
        return dp_optimal_cost(make_instance(s, t), guard=self.guard)

    def oracle_assignment(self, s, t):
        return dp_optimal_assignment(make_instance(s, t), guard=self.backtrace_guard)

    def rhythm(self, a, b, swap=False):
        return solve(rhythm_instance(a, b, swap), check=self.check).total_cost

    def export_solution(self, file_out, fmt="json"):
        if self.last_solution is None:
            raise ValueError("nothing solved yet")
        with open(file_out, "w", encoding="utf-8") as f:
            f.write(format_solution(self.last_instance, self.last_solution, fmt))

    def export_height(self, s, t, file_tsv=None, file_plot=None):
        inst = make_instance(s, t)
        p = height_profile(inst)
        if file_tsv is not None:
            with open(file_tsv, "w", encoding="utf-8") as f:
                f.write(height_tsv(p))
        if file_plot is not None:
            save_height_plot(p, file_plot, inst)
        return p


if __name__ == "__main__":
    assigner = LineAssigner(check=True)

    sol = assigner.solve(s=[0, 3, 4, 6, 13, 14, 15, 16], t=[1, 2, 8, 10, 11, 12])

    print("cost :", sol.total_cost)
    print("removed :", sol.removed)
    print("rhythm :", assigner.rhythm("xxx.", "x..."))
