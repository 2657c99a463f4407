# Commands package

