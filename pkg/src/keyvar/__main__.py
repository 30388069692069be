from keyvar.cli import main

raise SystemExit(main())
