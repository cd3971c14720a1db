import jtd.cli
jtd.cli.main()
