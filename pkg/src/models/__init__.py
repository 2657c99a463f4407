# Models package

