from simcon.cli import main

main()
