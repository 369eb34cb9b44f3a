"""The kfano command-line tool: ``python -m kfano <command> [options]``."""
import os
import sys


def normalize_argv(argv):
    """`kfano delta-bundle` is the `delta_bundle` management command"""
    argv = list(argv)
    argv[0] = "kfano"
    if len(argv) > 1 and not argv[1].startswith("-"):
        argv[1] = argv[1].replace("-", "_")
    return argv


def main(argv=None):
    """Dispatch to the kfano management commands."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "kfano.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    execute_from_command_line(normalize_argv(sys.argv if argv is None else argv))


if __name__ == "__main__":
    main()
