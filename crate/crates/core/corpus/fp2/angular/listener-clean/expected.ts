import { Component, OnDestroy, OnInit } from '@angular/core';

@Component({ selector: 'app-menu', template: '<nav></nav>' })
export class MenuComponent implements OnInit, OnDestroy {
  open = false;

  ngOnInit() {
    document.addEventListener('click', this.close);
  }

  ngOnDestroy() {
    document.removeEventListener('click', this.close);
  }

  close = () => {
    this.open = false;
  };
}
