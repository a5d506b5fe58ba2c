from critsets.cli import main

main()
