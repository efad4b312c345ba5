"""
Console tools:
- `tapeslicer` (cli.commands): plan / simulate / render / sync / study
- `python -m cli.calibrate`: noise gain derivation

"""
