# soficmaps.core package
