from .cli import build_parser, exit_code, main
