from igbosim.cli import run

run()
