import pytest
from typer.testing import CliRunner

from qdet.config import settings


@pytest.fixture
def runner():
    """A CLI runner for invoking the qdet app in-process."""
    return CliRunner()


@pytest.fixture
def problem_file(tmp_path):
    """Write problem text to a .qdet file and return its path."""
    def write(text: str, name: str = "problem.qdet"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def fake_solver(tmp_path):
    """Build a shell command that swallows stdin and prints canned solver output."""
    def build(output: str, exit_code: int = 0, delay: float = 0):
        script = tmp_path / f"solver{len(list(tmp_path.glob('solver*.sh')))}.sh"
        body = ["#!/bin/sh", "cat > /dev/null"]
        if delay:
            body.append(f"exec sleep {delay}")
        body += ["cat <<'EOF'", output.rstrip("\n"), "EOF", f"exit {exit_code}"]
        script.write_text("\n".join(body) + "\n", encoding="utf-8")
        return f"sh {script}"

    return build


@pytest.fixture(autouse=True)
def builtin_settings(monkeypatch):
    """Keep tests independent of QDET_* variables in the environment."""
    monkeypatch.setattr(settings, "solver_backend", "builtin")
    monkeypatch.setattr(settings, "solver_cmd", None)
    monkeypatch.setattr(settings, "time_limit", 30.0)
    monkeypatch.setattr(settings, "builtin_max_atoms", 30)
    monkeypatch.setattr(settings, "oracle_work_budget", 500_000)
