# src/graph.py

from langgraph.graph import StateGraph, END
from src.state import JobState

from src.nodes.validate import validate_node
from src.nodes.build_algebra import build_algebra_node
from src.nodes.build_automorphism import build_automorphism_node
from src.nodes.execute import execute_node
from src.nodes.report import report_node


NODES = ["validate", "build_algebra", "build_automorphism", "execute", "report"]


def should_continue(state: JobState) -> str:
    """
    Main routing function that determines next step based on current stage.
    """
    stage = state.get("stage")

    # Finished or failed jobs stop here; main turns the state into an exit code
    if state.get("is_complete") or state.get("error"):
        return END

    if stage == "init":
        return "validate"

    elif stage == "validated":
        return "build_algebra"

    elif stage == "algebra_built":
        return "build_automorphism"

    elif stage == "automorphism_built":
        return "execute"

    elif stage == "executed":
        return "report"

    # Default: end
    return END


def create_graph():
    graph = StateGraph(JobState)

    graph.add_node("validate", validate_node)
    graph.add_node("build_algebra", build_algebra_node)
    graph.add_node("build_automorphism", build_automorphism_node)
    graph.add_node("execute", execute_node)
    graph.add_node("report", report_node)

    routes = {name: name for name in NODES}
    routes[END] = END

    graph.set_conditional_entry_point(should_continue, routes)

    # Each node routes through the same conditional logic
    for node_name in NODES:
        graph.add_conditional_edges(node_name, should_continue, routes)

    return graph


app = create_graph().compile()
