import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]


@pytest.fixture
def repo_root() -> pathlib.Path:
    return REPO_ROOT


@pytest.fixture
def webcam_scc(repo_root) -> pathlib.Path:
    return repo_root / "examples" / "webcam.scc"


@pytest.fixture
def default_scn(repo_root) -> pathlib.Path:
    return repo_root / "examples" / "default.scn"


@pytest.fixture
def golden_dir(repo_root) -> pathlib.Path:
    return repo_root / "tests" / "golden"


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    from scckit.cli import main

    def run(*argv: str):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse reports usage errors this way
            code = exc.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
